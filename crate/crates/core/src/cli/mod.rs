//! The command-line surface: a small script language and its interpreter.
//!
//! A script declares signatures, symmetry groups, sizes, functors and
//! algebras, and runs commands against them. [`run_source`] parses and runs
//! a script and returns the exit code together with a text or JSON report.

mod report;
mod syntax;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::colimit::{Diagram, DiagramShape};
use crate::error::{Error, Result};
use crate::finset::{exponential, FiniteFn, FiniteSet};
use crate::functors::{
    preserves_colimit, Evaluator, FunctorExpr, GroupoidArrow, SymmetricContainer,
};
use crate::iteration::{
    catamorphism, deflationary_nu, free_algebra, inflationary_iterate, mu_initial_algebra,
    AlgebraSpec, MuResult, STATIONARITY_TEST,
};
use crate::signature::{wtype_enumerate, Signature};
use crate::size::{kappa_sigma, nat_backend, SizeBackend, SizeIndex};

pub use report::{CheckResult, CommandReport, ErrorReport, MapJson, RunReport, Status};
pub use syntax::{
    parse_dsl, ArrowDecl, Clauses, Command, CommandKind, Expr, Script, SizeRef, SizeSpec,
    Statement, COMPOSE_VARS,
};

/// Stages expanded per command when neither the script nor the flags say.
pub const DEFAULT_BUDGET: usize = 6;
/// Default for `iterate`, `check` and `enumerate`.
pub const DEFAULT_DEPTH: usize = 4;

/// JSON Schema for the `--format json` output.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Defaults for command clauses that a script leaves out.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub size: Option<SizeRef>,
    pub budget: Option<usize>,
    pub depth: Option<usize>,
    pub format: Format,
    /// Seed for the sampled order-law check.
    pub seed: u64,
}

/// Reads `nat`, `plump:<sig>` or the name of a declared size.
pub fn parse_size_flag(s: &str) -> SizeRef {
    match s.split_once(':') {
        _ if s == "nat" => SizeRef::Nat,
        Some(("plump", sig)) => SizeRef::Plump(sig.to_string()),
        _ => SizeRef::Named(s.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
}

/// Parses and runs a script.
pub fn run_source(src: &str, flags: &Flags) -> Outcome {
    let report = match parse_dsl(src) {
        Ok(script) => run(&script, flags),
        Err(e) => RunReport::failed(Vec::new(), ErrorReport::from_error(&e, None)),
    };
    Outcome {
        exit_code: report.exit_code,
        output: report.render(flags.format),
    }
}

/// Runs the statements of a script in order, stopping at the first error.
pub fn run(script: &Script, flags: &Flags) -> RunReport {
    let mut env = Env::default();
    let mut results = Vec::new();
    for (line, st) in script.iter() {
        match st {
            Statement::Command(c) => {
                let r = env.execute(c, line, flags);
                let stop = r.status != Status::Ok;
                results.push(r);
                if stop {
                    return RunReport::stopped(results);
                }
            }
            decl => {
                if let Err(e) = env.declare(decl) {
                    return RunReport::failed(results, ErrorReport::from_error(&e, Some(line)));
                }
            }
        }
    }
    RunReport::ok(results)
}

/// A script that declares `expr` as a unary functor and runs one command on
/// it; used by the one-shot subcommands of the binary. `defs` may declare
/// signatures and groups the expression refers to.
pub fn one_shot_script(
    defs: &str,
    expr: &str,
    command: &str,
    algebra: Option<(usize, &[usize])>,
) -> String {
    let mut s = String::from(defs);
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s.push_str(&format!("_F = {expr}\n"));
    let mut cmd = command.to_string();
    if let Some((carrier, table)) = algebra {
        let cells: Vec<String> = table.iter().map(usize::to_string).collect();
        s.push_str(&format!(
            "alg _A for _F on {carrier} = [{}]\n",
            cells.join(" ")
        ));
        cmd = cmd.replacen("cata", "cata _F with _A", 1);
    } else if let Some((head, tail)) = cmd.split_once(' ') {
        cmd = format!("{head} _F {tail}");
    } else {
        cmd.push_str(" _F");
    }
    s.push_str(&cmd);
    s.push('\n');
    s
}

#[derive(Default)]
struct Env {
    sigs: BTreeMap<String, Signature>,
    groups: BTreeMap<String, SymmetricContainer>,
    sizes: BTreeMap<String, SizeSpec>,
    functors: BTreeMap<String, FunctorExpr>,
    algs: BTreeMap<String, (String, usize, Vec<usize>)>,
}

struct Settings {
    size: SizeBackend,
    budget: usize,
    depth: usize,
}

impl Env {
    fn declare(&mut self, st: &Statement) -> Result<()> {
        match st {
            Statement::Sig { name, ops } => {
                self.sigs
                    .insert(name.clone(), Signature::new(ops.iter().cloned()));
            }
            Statement::Group {
                name,
                objects,
                arrows,
            } => {
                let pos = |o: &str| {
                    objects
                        .iter()
                        .position(|(n, _)| n == o)
                        .expect("checked by the parser")
                };
                let group = SymmetricContainer {
                    name: name.clone(),
                    objects: objects.clone(),
                    arrows: arrows
                        .iter()
                        .map(|a| GroupoidArrow {
                            name: a.name.clone(),
                            src: pos(&a.src),
                            dst: pos(&a.dst),
                            table: a.table.clone(),
                        })
                        .collect(),
                };
                group.validate()?;
                self.groups.insert(name.clone(), group);
            }
            Statement::Size { name, spec } => {
                self.sizes.insert(name.clone(), spec.clone());
            }
            Statement::Functor { name, params, body } => {
                let scope: Vec<String> = params.clone().unwrap_or_else(|| vec!["X".to_string()]);
                let e = self.elaborate(body, &scope)?;
                self.functors.insert(name.clone(), e);
            }
            Statement::Alg {
                name,
                functor,
                carrier,
                table,
            } => {
                self.algebra(functor, *carrier, table)?;
                self.algs
                    .insert(name.clone(), (functor.clone(), *carrier, table.clone()));
            }
            Statement::Command(_) => unreachable!("commands are executed, not declared"),
        }
        Ok(())
    }

    fn elaborate(&self, e: &Expr, scope: &[String]) -> Result<FunctorExpr> {
        let all = |es: &[Expr]| {
            es.iter()
                .map(|x| self.elaborate(x, scope))
                .collect::<Result<Vec<_>>>()
        };
        Ok(match e {
            Expr::Const(n) => FunctorExpr::constant(*n),
            Expr::Var(v) => {
                let k = scope
                    .iter()
                    .rposition(|s| s == v)
                    .expect("checked by the parser");
                if scope.len() == 1 {
                    FunctorExpr::Identity
                } else {
                    FunctorExpr::Projection(k)
                }
            }
            Expr::Ref(g) => self.functors[g].clone(),
            Expr::Apply(g, args) => {
                let mut inner = all(args)?;
                let inner = if inner.len() == 1 && inner[0].output_arity() == 1 {
                    inner.pop().unwrap()
                } else {
                    FunctorExpr::Pairing(inner)
                };
                FunctorExpr::compose(self.functors[g].clone(), inner)
            }
            Expr::Sum(ps) => FunctorExpr::Sum(all(ps)?),
            Expr::Product(ps) => FunctorExpr::FiniteProduct(all(ps)?),
            Expr::Power(b, n) => FunctorExpr::FiniteProduct(vec![self.elaborate(b, scope)?; *n]),
            Expr::Sym(g, a) => wrap(
                FunctorExpr::SymContainer(self.groups[g].clone()),
                self.elaborate(a, scope)?,
            ),
            Expr::Poly(s, a) => wrap(
                FunctorExpr::container(s.clone(), self.sigs[s].clone()),
                self.elaborate(a, scope)?,
            ),
            Expr::Mu(v, b) => {
                let mut inner = scope.to_vec();
                inner.push(v.clone());
                FunctorExpr::mu(v.clone(), self.elaborate(b, &inner)?)
            }
            Expr::Compose(o, i) => {
                let inner = self.elaborate(i, scope)?;
                let width = inner.output_arity().min(COMPOSE_VARS.len());
                let outer_scope: Vec<String> = COMPOSE_VARS[..width.max(1)]
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
                FunctorExpr::compose(self.elaborate(o, &outer_scope)?, inner)
            }
            Expr::Pair(ps) => FunctorExpr::Pairing(all(ps)?),
        })
    }

    fn size(&self, r: &SizeRef) -> Result<SizeBackend> {
        let sig = |s: &str| {
            self.sigs.get(s).ok_or_else(|| Error::Name {
                line: 0,
                col: 0,
                msg: format!("size flag names `{s}`, which is not a declared signature"),
            })
        };
        match r {
            SizeRef::Nat => Ok(nat_backend()),
            SizeRef::Plump(s) => Ok(kappa_sigma(sig(s)?)),
            SizeRef::Named(n) => match self.sizes.get(n) {
                Some(SizeSpec::Nat) => Ok(nat_backend()),
                Some(SizeSpec::Plump(s)) => Ok(kappa_sigma(sig(s)?)),
                None => Err(Error::Name {
                    line: 0,
                    col: 0,
                    msg: format!("size flag names `{n}`, which is not a declared size"),
                }),
            },
        }
    }

    fn settings(&self, c: &Clauses, flags: &Flags) -> Result<Settings> {
        let size = match c.size.as_ref().or(flags.size.as_ref()) {
            Some(r) => self.size(r)?,
            None => nat_backend(),
        };
        Ok(Settings {
            size,
            budget: c.budget.or(flags.budget).unwrap_or(DEFAULT_BUDGET),
            depth: c.depth.or(flags.depth).unwrap_or(DEFAULT_DEPTH),
        })
    }

    fn algebra(&self, functor: &str, carrier: usize, table: &[usize]) -> Result<AlgebraSpec> {
        let f = &self.functors[functor];
        let a = FiniteSet::new(carrier);
        let fa = Evaluator::default()
            .eval(f, std::slice::from_ref(&a))?
            .pop()
            .expect("unary functor");
        let structure = FiniteFn::new(fa.clone(), a.clone(), table.to_vec()).ok_or_else(|| {
            Error::NoAlgebra(format!(
                "a structure map {functor}({carrier}) -> {carrier} needs {} entries below {carrier}",
                fa.size()
            ))
        })?;
        Ok(AlgebraSpec::new(a, structure))
    }

    fn execute(&self, c: &Command, line: usize, flags: &Flags) -> CommandReport {
        let mut r = CommandReport::new(c.kind.keyword(), line, &c.target);
        if let Err(e) = self.execute_into(c, flags, &mut r) {
            r.fail(&e);
        }
        r
    }

    fn execute_into(&self, c: &Command, flags: &Flags, r: &mut CommandReport) -> Result<()> {
        let s = self.settings(&c.clauses, flags)?;
        if c.kind == CommandKind::Enumerate {
            let sig = &self.sigs[&c.target];
            let trees = wtype_enumerate(sig, s.depth);
            r.trees = Some(trees.iter().map(|t| t.render(sig)).collect());
            return Ok(());
        }
        let f = &self.functors[&c.target];
        if c.kind != CommandKind::Nu {
            r.size = Some(s.size.name());
        }
        match &c.kind {
            CommandKind::Iterate => {
                let st = inflationary_iterate(f, &s.size, &[s.size.succ_n(s.depth)], s.budget)?;
                r.stages = st.stages();
            }
            CommandKind::Mu => {
                let m = mu_initial_algebra(f, &s.size, s.budget)?;
                r.fixpoint(&m);
            }
            CommandKind::Free { on } => {
                let m = free_algebra(f, &FiniteSet::new(*on), &s.size, s.budget)?;
                r.fixpoint(&m);
            }
            CommandKind::Cata { algebra } => {
                let (functor, carrier, table) = &self.algs[algebra];
                if functor != &c.target {
                    return Err(Error::NoAlgebra(format!(
                        "`{algebra}` is an algebra for `{functor}`"
                    )));
                }
                let alg = self.algebra(functor, *carrier, table)?;
                let (mut state, at) = match c.clauses.at {
                    Some(n) => {
                        let i = s.size.succ_n(n);
                        (
                            inflationary_iterate(f, &s.size, std::slice::from_ref(&i), s.budget)?,
                            i,
                        )
                    }
                    None => {
                        let m = mu_initial_algebra(f, &s.size, s.budget)?;
                        r.fixpoint(&m);
                        let i = m.witness.stationary_at.clone();
                        (m.state, i)
                    }
                };
                r.stages = state.stages();
                let h = catamorphism(&mut state, &alg, &at)?;
                r.cata = Some(MapJson::from(&h));
            }
            CommandKind::Nu => {
                let n = deflationary_nu(f, s.budget)?;
                r.stages = n.stages.clone();
                r.stationary_at = Some(n.stationary_at.to_string());
                r.carrier = Some(n.carrier.size());
                r.coalgebra = Some(MapJson::from(&n.structure));
            }
            CommandKind::Check => {
                let checks = invariant_suites(f, &s, flags.seed)?;
                let failed: Vec<&str> = checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect();
                r.checks = Some(checks.clone());
                if !failed.is_empty() {
                    return Err(Error::Invariant(format!("failed: {}", failed.join(", "))));
                }
            }
            CommandKind::Enumerate => unreachable!(),
        }
        Ok(())
    }
}

/// `outer ∘ arg`, or just `outer` when `arg` is the identity.
fn wrap(outer: FunctorExpr, arg: FunctorExpr) -> FunctorExpr {
    if arg == FunctorExpr::Identity {
        outer
    } else {
        FunctorExpr::compose(outer, arg)
    }
}

impl CommandReport {
    fn fixpoint(&mut self, m: &MuResult) {
        self.stages = m.state.stages();
        self.stationary_at = Some(m.state.size().render(&m.witness.stationary_at));
        self.stationarity = Some(STATIONARITY_TEST.to_string());
        self.carrier = Some(m.algebra.carrier.size());
        self.iota = Some(MapJson::from(&m.algebra.structure));
    }
}

fn all_maps(n: usize, m: usize) -> impl Iterator<Item = FiniteFn> {
    let e = exponential(&FiniteSet::new(m), &FiniteSet::new(n));
    (0..e.set().size())
        .map(move |c| FiniteFn::from_table(n, m, e.decode(c)).expect("decoded table is in range"))
}

/// The checks behind the `check` command.
fn invariant_suites(f: &FunctorExpr, s: &Settings, seed: u64) -> Result<Vec<CheckResult>> {
    let ev = Evaluator::default();
    let fmap = |g: &FiniteFn| -> Result<FiniteFn> {
        Ok(ev.eval_mor(f, std::slice::from_ref(g))?.pop().unwrap())
    };
    let mut out = Vec::new();

    // identities and composition, exhaustively over sets of size ≤ 2
    let mut cases = 0;
    let mut bad = None;
    for a in 0..=2 {
        if !fmap(&FiniteSet::new(a).identity())?.is_identity() {
            bad.get_or_insert(format!("F(id_{a}) is not the identity"));
        }
        for b in 0..=2 {
            for c in 0..=2 {
                for g in all_maps(a, b) {
                    for h in all_maps(b, c) {
                        cases += 1;
                        let lhs = fmap(&h.after(&g).unwrap())?;
                        if fmap(&h)?.after(&fmap(&g)?) != Some(lhs) {
                            bad.get_or_insert(format!("composition fails for {g} then {h}"));
                        }
                    }
                }
            }
        }
    }
    out.push(CheckResult::new("functor-laws", cases, bad));

    // the iota equations on every expanded triple
    let top = s.size.succ_n(s.depth);
    let mut state = inflationary_iterate(f, &s.size, std::slice::from_ref(&top), s.budget)?;
    let triples = match state.check_iota_props() {
        Ok(n) => CheckResult::new("iota-equations", n, None),
        Err(e) => CheckResult::new("iota-equations", 0, Some(e.to_string())),
    };
    out.push(triples);

    // stages against plain iteration F^n(∅)
    let mut plain = vec![FiniteSet::empty()];
    for n in 0..s.depth {
        plain.push(ev.eval(f, std::slice::from_ref(&plain[n]))?.pop().unwrap());
    }
    let mut bad = None;
    for (n, p) in plain.iter().enumerate() {
        let got = state.object(&s.size.succ_n(n))?.size();
        if got != p.size() {
            bad.get_or_insert(format!(
                "stage {n} has {got} elements, F^{n}(0) has {}",
                p.size()
            ));
        }
    }
    out.push(CheckResult::new("chain-agreement", plain.len(), bad));

    // directed-colimit preservation on inclusion chains
    let mut cases = 0;
    let mut bad = None;
    for sizes in inclusion_chains(4, 3) {
        let n = sizes.len();
        let shape = DiagramShape::chain(n);
        let d = Diagram::build(
            shape,
            sizes.iter().map(|&k| FiniteSet::new(k)).collect(),
            |j, i| {
                Ok(
                    FiniteFn::from_table(sizes[j], sizes[i], (0..sizes[j]).collect())
                        .expect("inclusion"),
                )
            },
        )?;
        cases += 1;
        if !preserves_colimit(f, &d)? {
            bad.get_or_insert(format!(
                "comparison map is not bijective on the chain {sizes:?}"
            ));
        }
    }
    out.push(CheckResult::new("colimit-preservation", cases, bad));

    if let SizeBackend::Plump(p) = &s.size {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let trees: Vec<SizeIndex> = (0..64)
            .map(|_| SizeIndex::Plump(p.sample(&mut rng, 3)))
            .collect();
        let mut cases = 0;
        let mut bad = None;
        for i in &trees {
            if !s.size.leq(i, i) {
                bad.get_or_insert(format!("{} ≤ itself fails", s.size.render(i)));
            }
            for j in &trees {
                let join = s.size.join(i, j);
                if !(s.size.lt(i, &join) && s.size.lt(j, &join)) {
                    bad.get_or_insert(format!(
                        "join of {} and {} is not above both",
                        s.size.render(i),
                        s.size.render(j)
                    ));
                }
                if s.size.lt(j, i) && s.size.rank(j) >= s.size.rank(i) {
                    bad.get_or_insert(format!(
                        "{} < {} without rank decrease",
                        s.size.render(j),
                        s.size.render(i)
                    ));
                }
                for k in &trees {
                    cases += 1;
                    if s.size.lt(k, j) && s.size.lt(j, i) && !s.size.lt(k, i) {
                        bad.get_or_insert("strict order is not transitive".to_string());
                    }
                }
            }
        }
        out.push(CheckResult::new("order-laws", cases, bad));

        // stage sizes on the plump chain against the natural numbers
        let nat = inflationary_iterate(f, &nat_backend(), &[SizeIndex::Nat(s.depth)], s.budget)?;
        let mut bad = None;
        for h in 0..=s.depth {
            let (a, b) = (
                state.object(&s.size.succ_n(h))?.size(),
                nat.object(&SizeIndex::Nat(h))?.size(),
            );
            if a != b {
                bad.get_or_insert(format!("height {h}: {a} elements against {b}"));
            }
        }
        out.push(CheckResult::new("plump-agreement", s.depth + 1, bad));
    }
    Ok(out)
}

/// Non-decreasing size sequences of length 1..=len with entries ≤ max.
fn inclusion_chains(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..=max).map(|k| vec![k]).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for c in frontier {
            let last = *c.last().unwrap();
            for k in last..=max {
                let mut d = c.clone();
                d.push(k);
                next.push(d);
            }
            out.push(c);
        }
        frontier = next;
        if out.last().map_or(0, Vec::len) == len {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json(src: &str) -> (i32, serde_json::Value) {
        let flags = Flags {
            format: Format::Json,
            ..Flags::default()
        };
        let o = run_source(src, &flags);
        (o.exit_code, serde_json::from_str(&o.output).unwrap())
    }

    #[test]
    fn constant_mu_reports_stationarity() {
        let (code, v) = json("F = 3\nmu F size nat budget 5");
        assert_eq!(code, 0);
        let r = &v["results"][0];
        assert_eq!(r["stationaryAt"], "2");
        assert_eq!(r["carrier"], 3);
        assert_eq!(r["status"], "ok");
    }

    #[test]
    fn budget_exit_code_with_partial_profile() {
        let (code, v) = json("F = 1 + X*X\nmu F size nat budget 5");
        assert_eq!(code, 2);
        let sizes: Vec<u64> = v["results"][0]["stages"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["size"].as_u64().unwrap())
            .collect();
        assert_eq!(sizes, vec![0, 1, 2, 5, 26]);
        assert_eq!(v["results"][0]["status"], "budget_exceeded");
    }

    #[test]
    fn malformed_script() {
        let (code, v) = json("F = 1 +");
        assert_eq!(code, 1);
        assert_eq!(v["error"]["kind"], "syntax");
        assert_eq!(v["error"]["line"], 1);
    }

    #[test]
    fn commands_stop_at_first_failure() {
        let (code, v) = json("F = 1 + X\nmu F budget 3\nnu F");
        assert_eq!(code, 2);
        assert_eq!(v["results"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn invalid_group_is_a_usage_error() {
        let (code, v) = json("group g = p:2 with s: p -> p [0 0]\nF = sym<g> X");
        assert_eq!(code, 1);
        assert_eq!(v["error"]["line"], 1);
    }

    #[test]
    fn cata_and_free() {
        let (code, v) = json("F = 1 + X\nalg parity for F on 2 = [0 1 0]\ncata F with parity at 4");
        assert_eq!(code, 0, "{v}");
        // D_4 = {0, s0, ss0, sss0}, parity of the number of successors
        assert_eq!(
            v["results"][0]["cata"]["table"],
            serde_json::json!([0, 1, 0, 1])
        );
        let (code, v) = json("F = 2\nfree F on 3");
        assert_eq!(code, 0);
        assert_eq!(v["results"][0]["carrier"], 5);
    }

    #[test]
    fn wrong_algebra_for_cata() {
        let (code, _) = json("F = 1 + X\nG = 1 + X\nalg a for G on 1 = [0 0]\ncata F with a at 2");
        assert_eq!(code, 1);
        let (code, _) = json("F = 1 + X\nalg a for F on 2 = [0 1]");
        assert_eq!(code, 1);
    }

    #[test]
    fn check_passes_on_polynomial_functors() {
        let (code, v) =
            json("sig T = leaf:0 | node:2\nF = poly<T> X\ncheck F size plump:T depth 3 budget 40");
        assert_eq!(code, 0, "{v:#}");
        let names: Vec<&str> = v["results"][0]["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["name"].as_str().unwrap())
            .collect();
        assert!(names.contains(&"order-laws") && names.contains(&"plump-agreement"));
    }

    #[test]
    fn enumerate_lists_trees() {
        let (code, v) = json("sig T = leaf:0 | node:2\nenumerate T depth 2");
        assert_eq!(code, 0);
        assert_eq!(v["results"][0]["trees"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn flags_supply_defaults() {
        let flags = Flags {
            size: Some(parse_size_flag("plump:T")),
            budget: Some(20),
            format: Format::Json,
            ..Flags::default()
        };
        let o = run_source("sig T = a:0\nF = 1 + X\niterate F depth 2", &flags);
        assert_eq!(o.exit_code, 0, "{}", o.output);
        assert!(o.output.contains("b(n, n)"));
        let missing = run_source(
            "F = X\nmu F",
            &Flags {
                size: Some(parse_size_flag("plump:Q")),
                ..Flags::default()
            },
        );
        assert_eq!(missing.exit_code, 1);
    }

    #[test]
    fn one_shot_scripts() {
        let s = one_shot_script("", "1 + X", "mu budget 4", None);
        assert_eq!(s, "_F = 1 + X\nmu _F budget 4\n");
        let s = one_shot_script("sig T = a:0", "1 + X", "cata at 2", Some((2, &[0, 1, 0])));
        assert!(parse_dsl(&s).is_ok(), "{s}");
    }

    #[test]
    fn chains_enumerated() {
        let c = inclusion_chains(2, 1);
        assert_eq!(
            c,
            vec![vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 1]]
        );
    }
}
