use crate::{Command, Input};
use kcut_core::cutsolve::{
    enumerate_approx_kcuts, ravi_sinha_cut, round_lp, SolveError, SolverConfig, SolverRegistry,
};
use kcut_core::graph::{CutResult, EdgeId, Graph, VertexPartition};
use kcut_core::lp::{
    check_complementary_slackness, lagrangean_value, lp_dual, lp_primal, lp_value, verify_dual,
    verify_primal, DualMode, LpError,
};
use kcut_core::mincut::{global_mincut, MincutError};
use kcut_core::oracle::{
    oracle_lp_value, oracle_min_kcut, oracle_strength, oracle_treepack, OracleError, OracleLimits,
};
use kcut_core::rational::{self, Rational};
use kcut_core::strength::{principal_sequence, strength, StrengthError};
use kcut_core::treepack::{PackConfig, PackError, PackerRegistry, TreePacking};
use kcut_core::verify::{default_ks, verify};
use serde_json::{json, Value};
use std::fmt;
use std::io::Read;

#[derive(Debug)]
pub enum CliError {
    /// Bad input or flags: exit 1.
    Input(String),
    /// A library invariant broke: exit 2.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Internal(m) => write!(f, "internal check failed: {m}"),
        }
    }
}

impl From<StrengthError> for CliError {
    fn from(e: StrengthError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PackError> for CliError {
    fn from(e: PackError) -> Self {
        match e {
            PackError::BadEpsilon
            | PackError::NoEdges
            | PackError::CapacityLength { .. }
            | PackError::NegativeCapacity(_) => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<LpError> for CliError {
    fn from(e: LpError) -> Self {
        match e {
            LpError::KOutOfRange { .. } | LpError::KAtMostComponents { .. } => {
                CliError::Input(e.to_string())
            }
            LpError::Pack(p) => p.into(),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Pack(p) => p.into(),
            SolveError::Lp(l) => l.into(),
            SolveError::Oracle(o) => o.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Lp(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<MincutError> for CliError {
    fn from(e: MincutError) -> Self {
        match e {
            MincutError::Pack(p) => p.into(),
            MincutError::NotSpanningTree => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn load(input: &Input) -> Result<Graph, CliError> {
    let text = if input.graph.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.graph)
            .map_err(|e| CliError::Input(format!("{}: {e}", input.graph.display())))?
    };
    Graph::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", input.graph.display())))
}

fn parse_q(flag: &str, text: &str) -> Result<Rational, CliError> {
    rational::parse(text).map_err(|e| CliError::Input(format!("--{flag}: {e}")))
}

fn q(v: &Rational) -> Value {
    Value::String(rational::to_string(v))
}

fn qs(vs: &[Rational]) -> Value {
    Value::Array(vs.iter().map(q).collect())
}

fn part(p: &VertexPartition) -> Value {
    json!(p.to_one_indexed())
}

fn edges(ids: &[EdgeId]) -> Value {
    json!(ids.iter().map(|e| e + 1).collect::<Vec<_>>())
}

fn cut(c: &CutResult) -> Value {
    json!({"value": q(&c.value), "k_achieved": c.k_achieved, "partition": part(&c.partition)})
}

fn packing(p: &TreePacking) -> Value {
    let trees: Vec<Value> = p
        .trees
        .iter()
        .zip(&p.weights)
        .map(|(t, y)| json!({"edges": edges(t), "weight": q(y)}))
        .collect();
    let mut v = json!({
        "total_value": q(&p.total_value),
        "trees": trees,
        "loads": qs(&p.loads),
    });
    if let Some(a) = p.approx_value {
        v["approx_value"] = json!(a);
    }
    v
}

fn limits(max_n: usize, max_trees: usize) -> OracleLimits {
    OracleLimits {
        max_n_partitions: max_n,
        max_spanning_trees: max_trees,
    }
}

/// Runs one subcommand; returns its JSON value and whether a certificate
/// failed.
pub fn run(cmd: &Command) -> Result<(Value, bool), CliError> {
    match cmd {
        Command::Strength(input) => {
            let g = load(input)?;
            let (sigma, p) = strength(&g)?;
            Ok((json!({"strength": q(&sigma), "partition": part(&p)}), false))
        }
        Command::Psp(input) => {
            let g = load(input)?;
            let psp = principal_sequence(&g);
            let levels: Vec<Value> = psp
                .levels
                .iter()
                .map(|l| json!({"lambda": q(&l.lambda), "partition": part(&l.partition), "kappa": l.kappa}))
                .collect();
            Ok((json!({"components": psp.kappa(0), "levels": levels}), false))
        }
        Command::Pack { method, eps, input } => {
            let cfg = PackConfig::with_epsilon(parse_q("eps", eps)?);
            let reg = PackerRegistry::default();
            let packer = reg.get(method, &cfg).ok_or_else(|| {
                CliError::Input(format!(
                    "unknown method {method:?}; known: {}",
                    reg.names().join(", ")
                ))
            })?;
            let g = load(input)?;
            let p = packer.pack(&g, &g.caps())?;
            let mut v = json!({"method": packer.name()});
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, packing(&p)) {
                dst.extend(src);
            }
            Ok((v, p.overloaded_edge().is_some()))
        }
        Command::Lp { k, input } => {
            let g = load(input)?;
            let k = k.k;
            let psp = principal_sequence(&g);
            let primal = lp_primal(&g, &psp, k)?;
            let dual = lp_dual(&g, &psp, k, DualMode::Explicit)?;
            let (lag, b) = lagrangean_value(&g, &psp, k)?;
            let pv = verify_primal(&g, &primal.x, k);
            let dv = verify_dual(&g, &dual)?;
            let cs = check_complementary_slackness(&g, &primal.x, &dual)?;
            let ok = pv.feasible
                && dv.feasible
                && cs.all_hold()
                && primal.objective == dual.objective
                && dual.objective == lag;
            let trees = dual.packing.as_ref().map(packing).unwrap_or(Value::Null);
            let v = json!({
                "k": k,
                "primal": {
                    "x": qs(&primal.x),
                    "level": primal.level,
                    "alpha": q(&primal.alpha),
                    "value": q(&primal.objective),
                },
                "dual": {
                    "z": qs(&dual.z),
                    "tree_total": q(&dual.tree_total),
                    "trees": trees["trees"].clone(),
                    "value": q(&dual.objective),
                },
                "lagrangean": {"b": q(&b), "value": q(&lag)},
                "certificates": {
                    "primal_feasible": pv.feasible,
                    "dual_feasible": dv.feasible,
                    "cs": cs.as_array(),
                },
            });
            Ok((v, !ok))
        }
        Command::Solve {
            k,
            exact: _,
            eps,
            solver,
            all,
            input,
        } => {
            let mut cfg = SolverConfig::default();
            let name = match (solver, eps) {
                (Some(s), _) => s.clone(),
                (None, Some(e)) => {
                    cfg.epsilon = Some(parse_q("eps", e)?);
                    "tree-mwu".to_string()
                }
                (None, None) => "tree-exact".to_string(),
            };
            let reg = SolverRegistry::default();
            let s = reg.get(&name, &cfg).ok_or_else(|| {
                CliError::Input(format!(
                    "unknown solver {name:?}; known: {}",
                    reg.names().join(", ")
                ))
            })?;
            let g = load(input)?;
            let out = s.solve(&g, k.k)?;
            let mut v = json!({"solver": s.name(), "exact": s.exact()});
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, cut(&out.cut)) {
                dst.extend(src);
            }
            if *all {
                v["minimizers"] = match &out.minimizers {
                    Some(ms) => json!(ms.iter().map(part).collect::<Vec<_>>()),
                    None => Value::Null,
                };
            }
            Ok((v, out.cut.k_achieved < k.k))
        }
        Command::Enumerate { k, alpha, input } => {
            let alpha = parse_q("alpha", alpha)?;
            let g = load(input)?;
            let r = enumerate_approx_kcuts(&g, k.k, &alpha)?;
            let bound = &alpha * &r.min_value;
            let v = json!({
                "k": k.k,
                "alpha": q(&alpha),
                "h": r.h,
                "optimum": q(&r.min_value),
                "bound": q(&bound),
                "trees_scanned": r.trees_scanned,
                "count": r.cuts.len(),
                "cuts": r.cuts.iter().map(cut).collect::<Vec<_>>(),
            });
            Ok((v, false))
        }
        Command::Round { k, input } => {
            let g = load(input)?;
            let psp = principal_sequence(&g);
            let primal = lp_primal(&g, &psp, k.k)?;
            let r = round_lp(&g, &primal.x, k.k, Some(&primal.objective))?;
            let mut v = cut(&r.cut);
            v["lp_value"] = q(&r.lp_value);
            v["certified"] = json!(r.certified);
            Ok((v, !r.certified))
        }
        Command::Approx { k, input } => {
            let g = load(input)?;
            let psp = principal_sequence(&g);
            let c = ravi_sinha_cut(&g, &psp, k.k)?;
            let lp = lp_value(&g, &psp, k.k)?;
            let mut v = cut(&c);
            v["lp_value"] = q(&lp);
            v["ratio"] = q(&(&c.value / &lp));
            Ok((v, false))
        }
        Command::Mincut { eps, input } => {
            let eps = parse_q("eps", eps)?;
            let g = load(input)?;
            let r = global_mincut(&g, &eps)?;
            let mut v = cut(&r.cut);
            v["tree"] = json!(r.tree_index);
            v["crossing_edges"] = edges(&r.tree_edges);
            v["trees_scanned"] = json!(r.trees_scanned);
            Ok((v, false))
        }
        Command::Oracle {
            k,
            max_n,
            max_trees,
            input,
        } => {
            let lim = limits(*max_n, *max_trees);
            let g = load(input)?;
            let mut v = json!({});
            if g.n() >= 2 && g.is_connected() {
                let (sigma, p) = oracle_strength(&g, &lim)?;
                v["strength"] = q(&sigma);
                v["partition"] = part(&p);
                v["treepack"] = q(&oracle_treepack(&g, &lim)?);
            }
            if let Some(k) = *k {
                let r = oracle_min_kcut(&g, k, &lim)?;
                v["k"] = json!(k);
                v["min_kcut"] = cut(&r.best);
                v["minimizers"] = json!(r.minimizers.iter().map(part).collect::<Vec<_>>());
                v["lp_value"] = q(&oracle_lp_value(&g, k, &lim)?.value);
            }
            Ok((v, false))
        }
        Command::Verify {
            k,
            max_n,
            max_trees,
            input,
        } => {
            let g = load(input)?;
            let ks = if k.is_empty() {
                default_ks(&g)
            } else {
                k.clone()
            };
            let report = verify(&g, &ks, &limits(*max_n, *max_trees));
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| json!({"check": r.check, "k": r.k, "status": r.status.as_str(), "detail": r.detail}))
                .collect();
            let v = json!({"passed": report.passed(), "failures": report.failures(), "rows": rows});
            Ok((v, !report.passed()))
        }
    }
}
