//! The verification suite: the gallery engine against the classical oracles
//! and the combinatorial invariants, one named check per identity.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::folding::{
    enumerate_pf_all, is_locally_positively_folded, is_ls_unchecked, is_minimal, is_positively_folded, junction_dirs,
    two_step_pf_dirs,
};
use crate::gallery::{cell_dimension, crossing_counts, enumerate_of_type, Gallery, GalleryType};
use crate::hlengine::{character_ls, character_to_json, Engine, EngineOptions, FormalCharacter};
use crate::oracles::{freudenthal_character, hall_littlewood_direct, kostka_coweights, l_from_expansion, weyl_dimension};
use crate::poly::QPoly;
use crate::residue::{
    choose_sector, enumerate_gamma_plus_op, junction_factor, junction_factor_variants, junction_input, valid_sectors,
    JunctionFactorInput,
};
use crate::rootdata::{q, Family, RootSystem, RootSystemSpec, RootVec};
use crate::tableaux::{gallery_to_tableau, tableau_to_gallery};

pub const DEFAULT_SYSTEMS: [&str; 7] = ["A1", "A2", "A3", "B2", "C2", "B3", "C3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// The three A₂ values for λ = 2ω₁ + ω₂.
    A2Example,
    /// Every check over the configured systems.
    Full,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub systems: Vec<RootSystemSpec>,
    /// Bound on Σ a_i for λ = Σ a_i ω_i.
    pub max_sum: i64,
    /// Bound on ⟨λ, 2ρ⟩.
    pub max_two_rho: i64,
    pub engine: EngineOptions,
    pub seed: u64,
    /// Junctions sampled per system of rank ≥ 3 for choice independence.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suite: Suite::Full,
            systems: DEFAULT_SYSTEMS.iter().map(|s| s.parse().expect("valid type")).collect(),
            max_sum: 3,
            max_two_rho: 16,
            engine: EngineOptions::default(),
            seed: 0x5eed,
            samples: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<Value>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult { name: name.into(), passed: true, checked: 0, counterexample: None }
    }

    /// Count one instance; the first failure is kept.
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(witness());
        }
    }

    fn error(&mut self, e: crate::Error) {
        self.record(false, || json!({ "error": e.to_string() }));
    }

    fn merge(&mut self, other: CheckResult) {
        self.checked += other.checked;
        if !other.passed && self.passed {
            self.passed = false;
            self.counterexample = other.counterexample;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    fn new(checks: Vec<CheckResult>) -> Self {
        Report { passed: checks.iter().all(|c| c.passed), checks }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn pretty(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{tag} {} ({} checked)\n", c.name, c.checked));
            if let Some(x) = &c.counterexample {
                s.push_str(&format!("  counterexample: {x}\n"));
            }
        }
        s
    }
}

/// Dominant λ with Σ a_i ≤ max_sum and ⟨λ, 2ρ⟩ ≤ max_two_rho.
pub fn suite_lambdas(rs: &RootSystem, max_sum: i64, max_two_rho: i64) -> Vec<Vec<i64>> {
    rs.dominant_coeffs_up_to(max_sum)
        .into_iter()
        .filter(|l| two_rho(rs, l) <= max_two_rho)
        .collect()
}

fn two_rho(rs: &RootSystem, coeffs: &[i64]) -> i64 {
    let v = rs.coweight(coeffs).expect("dominant coefficients");
    (v.dot(&rs.rho) * q(2)).to_integer()
}

/// Every dominant μ with ⟨μ, 2ρ⟩ ≤ ⟨λ, 2ρ⟩; this contains all μ ≤ λ.
fn mu_range(rs: &RootSystem, lambda: &[i64]) -> Vec<Vec<i64>> {
    let bound = two_rho(rs, lambda);
    // ⟨ω_i, 2ρ⟩ ≥ 1, so Σ b_i ≤ bound
    rs.dominant_coeffs_up_to(bound)
        .into_iter()
        .filter(|m| two_rho(rs, m) <= bound)
        .collect()
}

fn l_json(rs: &RootSystem, lambda: &[i64], mu: &[i64], got: &QPoly, want: &QPoly) -> Value {
    json!({
        "type": rs.spec.to_string(),
        "lambda": lambda,
        "mu": mu,
        "engine": got.to_string(),
        "oracle": want.to_string(),
    })
}

fn gallery_json(rs: &RootSystem, lambda: &[i64], g: &Gallery, what: &str) -> Value {
    json!({ "type": rs.spec.to_string(), "lambda": lambda, "gallery": g.to_json(), "failed": what })
}

fn junction_json(rs: &RootSystem, inp: &JunctionFactorInput, what: Value) -> Value {
    json!({
        "type": rs.spec.to_string(),
        "vertex": inp.vertex.to_strings(),
        "d_in": inp.d_in.to_strings(),
        "d_out": inp.d_out.to_strings(),
        "detail": what,
    })
}

/// Per-λ data shared by the polynomial checks.
struct CaseData {
    system: usize,
    lambda: Vec<i64>,
    mus: Vec<Vec<i64>>,
    engine: Result<BTreeMap<Vec<i64>, QPoly>>,
}

impl CaseData {
    fn engine_l(&self, mu: &[i64]) -> QPoly {
        match &self.engine {
            Ok(m) => m.get(mu).cloned().unwrap_or_default(),
            Err(_) => QPoly::zero(),
        }
    }
}

pub struct Verifier {
    cfg: VerifyConfig,
    systems: Vec<RootSystem>,
    cases: Vec<(usize, Vec<i64>)>,
    data: std::sync::OnceLock<Vec<CaseData>>,
}

impl Verifier {
    pub fn new(cfg: VerifyConfig) -> Result<Self> {
        let systems: Vec<RootSystem> = cfg.systems.iter().map(|s| RootSystem::new(*s)).collect::<Result<_>>()?;
        let mut cases = Vec::new();
        for (i, rs) in systems.iter().enumerate() {
            for l in suite_lambdas(rs, cfg.max_sum, cfg.max_two_rho) {
                cases.push((i, l));
            }
        }
        Ok(Verifier { cfg, systems, cases, data: std::sync::OnceLock::new() })
    }

    pub fn num_cases(&self) -> usize {
        self.cases.len()
    }

    fn data(&self) -> &[CaseData] {
        self.data.get_or_init(|| {
            self.cases
                .par_iter()
                .map(|(i, l)| {
                    let rs = &self.systems[*i];
                    CaseData {
                        system: *i,
                        lambda: l.clone(),
                        mus: mu_range(rs, l),
                        engine: Engine::with_options(rs, self.cfg.engine).l_all(l),
                    }
                })
                .collect()
        })
    }

    pub fn run(&self) -> Report {
        match self.cfg.suite {
            Suite::A2Example => Report::new(vec![a2_example(self.cfg.engine)]),
            Suite::Full => Report::new(vec![
                a2_example(self.cfg.engine),
                self.oracle_equivalence(),
                self.euler_characteristic(),
                self.character_formula(),
                self.leading_structure(),
                self.combinatorial_invariants(),
                self.tableau_bijection(),
                self.choice_independence(),
            ]),
        }
    }

    fn per_case<F>(&self, name: &str, f: F) -> CheckResult
    where
        F: Fn(&CaseData, &RootSystem, &mut CheckResult) + Sync,
    {
        let parts: Vec<CheckResult> = self
            .data()
            .par_iter()
            .map(|d| {
                let mut c = CheckResult::new(name);
                let rs = &self.systems[d.system];
                if let Err(e) = &d.engine {
                    c.error(e.clone());
                } else {
                    f(d, rs, &mut c);
                }
                c
            })
            .collect();
        let mut out = CheckResult::new(name);
        for p in parts {
            out.merge(p);
        }
        out
    }

    /// Engine L_{λ,μ} equals the Hall–Littlewood expansion coefficient.
    pub fn oracle_equivalence(&self) -> CheckResult {
        self.per_case("oracle-equivalence", |d, rs, c| {
            let p = match hall_littlewood_direct(rs, &d.lambda) {
                Ok(p) => p,
                Err(e) => return c.error(e),
            };
            let mut mus: Vec<Vec<i64>> = d.mus.clone();
            if let Ok(m) = &d.engine {
                mus.extend(m.keys().filter(|k| !d.mus.contains(k)).cloned());
            }
            for mu in &mus {
                let got = d.engine_l(mu);
                match l_from_expansion(rs, &p, &d.lambda, mu) {
                    Ok(want) => c.record(got == want, || l_json(rs, &d.lambda, mu, &got, &want)),
                    Err(e) => c.error(e),
                }
            }
        })
    }

    /// L_{λ,μ}(1) = 1 if μ = λ and 0 otherwise, for dominant μ.
    pub fn euler_characteristic(&self) -> CheckResult {
        self.per_case("euler-characteristic", |d, rs, c| {
            for mu in &d.mus {
                let l = d.engine_l(mu);
                let want = i64::from(*mu == d.lambda);
                c.record(l.eval(1) == want, || {
                    json!({ "type": rs.spec.to_string(), "lambda": d.lambda, "mu": mu, "L": l.to_string(), "L(1)": l.eval(1) })
                });
            }
        })
    }

    /// LS-galleries count the weights of V(λ).
    pub fn character_formula(&self) -> CheckResult {
        self.per_case("character-formula", |d, rs, c| {
            let ls = character_ls(rs, &d.lambda);
            let fr = freudenthal_character(rs, &d.lambda);
            let dim = weyl_dimension(rs, &d.lambda);
            match (ls, fr, dim) {
                (Ok(ls), Ok(fr), Ok(dim)) => {
                    let total: u64 = ls.values().sum();
                    c.record(ls == fr && total == dim, || {
                        json!({
                            "type": rs.spec.to_string(),
                            "lambda": d.lambda,
                            "ls": character_to_json(&ls),
                            "freudenthal": character_to_json(&fr),
                            "weyl_dimension": dim,
                        })
                    });
                }
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => c.error(e),
            }
        })
    }

    /// deg L ≤ ⟨λ+μ, ρ⟩, with equality and leading coefficient #LS when
    /// that count is nonzero; in type A the top coefficient is Kostka.
    pub fn leading_structure(&self) -> CheckResult {
        self.per_case("leading-structure", |d, rs, c| {
            let ls: FormalCharacter = match character_ls(rs, &d.lambda) {
                Ok(x) => x,
                Err(e) => return c.error(e),
            };
            let lam = rs.coweight(&d.lambda).expect("dominant");
            for mu in &d.mus {
                let l = d.engine_l(mu);
                let Some(m) = rs.coweight_in_coset(mu, &lam).expect("dominant") else {
                    c.record(l.is_zero(), || l_json(rs, &d.lambda, mu, &l, &QPoly::zero()));
                    continue;
                };
                let top = (&lam + &m).dot(&rs.rho);
                let n_ls = ls.get(&m).copied().unwrap_or(0);
                let witness = || {
                    json!({
                        "type": rs.spec.to_string(), "lambda": d.lambda, "mu": mu,
                        "L": l.to_string(), "bound": top.to_string(), "ls_count": n_ls,
                    })
                };
                let bounded = l.degree().is_none_or(|k| q(k as i64) <= top);
                let exact = n_ls == 0
                    || (top.is_integer() && l.leading_data().ok() == Some((top.to_integer() as usize, n_ls as i64)));
                c.record(bounded && exact, witness);
                if rs.spec.family == Family::A && top.is_integer() {
                    match kostka_coweights(rs, &d.lambda, mu) {
                        Ok(k) => {
                            let lead = l.coeff(top.to_integer() as usize);
                            c.record(lead == k as i64, || {
                                json!({ "type": rs.spec.to_string(), "lambda": d.lambda, "mu": mu, "L": l.to_string(), "kostka": k })
                            });
                        }
                        Err(e) => c.error(e),
                    }
                }
            }
        })
    }

    fn per_type<F>(&self, name: &str, f: F) -> CheckResult
    where
        F: Fn(&RootSystem, &[i64], &[Gallery], &mut CheckResult) + Sync,
    {
        let parts: Vec<CheckResult> = self
            .cases
            .par_iter()
            .map(|(i, l)| {
                let mut c = CheckResult::new(name);
                let rs = &self.systems[*i];
                match GalleryType::of_lambda(rs, l) {
                    Ok(t) => f(rs, l, &enumerate_of_type(rs, &t), &mut c),
                    Err(e) => c.error(e),
                }
                c
            })
            .collect();
        let mut out = CheckResult::new(name);
        for p in parts {
            out.merge(p);
        }
        out
    }

    /// Crossing counts, cell dimension, minimal and minuscule galleries,
    /// local against global folding, and the junction bridge, over every
    /// gallery of each suite type.
    pub fn combinatorial_invariants(&self) -> CheckResult {
        self.per_type("combinatorial-invariants", |rs, l, gs, c| {
            let tr = two_rho(rs, l) as usize;
            let minuscule = l.iter().sum::<i64>() == 1 && l.iter().position(|&a| a == 1).is_some_and(|i| rs.is_minuscule(i));
            let mut seen = HashSet::new();
            for g in gs {
                let cc = crossing_counts(rs, g);
                c.record(cc.sharp_pm == tr, || gallery_json(rs, l, g, "crossing count ♯± = ⟨λ,2ρ⟩"));
                c.record(cell_dimension(rs, g) == cc.sharp_plus, || gallery_json(rs, l, g, "cell dimension = ♯⁺"));
                let pf = is_positively_folded(rs, g);
                if is_minimal(rs, g) {
                    c.record(pf && is_ls_unchecked(rs, g), || gallery_json(rs, l, g, "minimal ⟹ LS"));
                }
                if minuscule {
                    c.record(pf && is_ls_unchecked(rs, g), || gallery_json(rs, l, g, "minuscule ⟹ LS"));
                }
                c.record(is_locally_positively_folded(rs, g) == pf, || gallery_json(rs, l, g, "local PF ⟺ PF"));
                for j in 1..g.num_edges() {
                    let (din, dout) = junction_dirs(g, j);
                    let v = &g.vertices[j];
                    if !seen.insert((v.clone(), din.clone(), dout.clone())) {
                        continue;
                    }
                    let two_pf = two_step_pf_dirs(rs, v, &din, &dout);
                    c.record(choose_sector(rs, v, &din, &dout).is_ok() == two_pf, || {
                        gallery_json(rs, l, g, &format!("sector exists ⟺ two-step PF at junction {j}"))
                    });
                    for s in valid_sectors(rs, v, &din, &dout) {
                        let inp = JunctionFactorInput { vertex: v.clone(), d_in: din.clone(), d_out: dout.clone(), sector: s };
                        match enumerate_gamma_plus_op(rs, &inp) {
                            Ok(cg) => c.record(cg.is_empty() != two_pf, || {
                                junction_json(rs, &inp, json!({ "two_step_pf": two_pf, "gamma_plus": cg.len(), "sector": s }))
                            }),
                            Err(e) => c.error(e),
                        }
                    }
                }
            }
        })
    }

    /// Gallery ↔ tableau round trips, semistandard ⟺ positively folded,
    /// and type A counts against Kostka numbers.
    pub fn tableau_bijection(&self) -> CheckResult {
        self.per_type("tableau-bijection", |rs, l, gs, c| {
            let mut pf_count: BTreeMap<RootVec, u64> = BTreeMap::new();
            let mut ssyt_count: BTreeMap<RootVec, u64> = BTreeMap::new();
            for g in gs {
                let t = match gallery_to_tableau(rs, g) {
                    Ok(t) => t,
                    Err(e) => return c.error(e),
                };
                let back = tableau_to_gallery(rs, &t);
                c.record(back.as_ref().ok() == Some(g), || gallery_json(rs, l, g, "tableau round trip"));
                let pf = is_positively_folded(rs, g);
                c.record(t.is_semistandard() == pf, || {
                    json!({ "type": rs.spec.to_string(), "lambda": l, "tableau": t.to_json(), "positively_folded": pf })
                });
                if pf {
                    *pf_count.entry(g.target().clone()).or_default() += 1;
                }
                if t.is_semistandard() {
                    if let Ok(w) = t.weight(rs) {
                        *ssyt_count.entry(w).or_default() += 1;
                    }
                }
            }
            if rs.spec.family == Family::A {
                let lam = rs.coweight(l).expect("dominant");
                for mu in mu_range(rs, l) {
                    let Some(m) = rs.coweight_in_coset(&mu, &lam).expect("dominant") else {
                        continue;
                    };
                    let k = kostka_coweights(rs, l, &mu);
                    let (np, ns) = (pf_count.get(&m).copied().unwrap_or(0), ssyt_count.get(&m).copied().unwrap_or(0));
                    match k {
                        Ok(k) => c.record(np == k && ns == k, || {
                            json!({ "type": rs.spec.to_string(), "lambda": l, "mu": mu, "pf": np, "ssyt": ns, "kostka": k })
                        }),
                        Err(e) => c.error(e),
                    }
                }
            }
        })
    }

    /// Junction factors under every valid sector and reduced word
    /// (exhaustive below rank 3, seeded samples from rank 3), and L
    /// recomputed with the alternate choices.
    pub fn choice_independence(&self) -> CheckResult {
        let name = "choice-independence";
        let mut out = CheckResult::new(name);
        for (i, rs) in self.systems.iter().enumerate() {
            let lambdas: Vec<&Vec<i64>> = self.cases.iter().filter(|(k, _)| *k == i).map(|(_, l)| l).collect();
            let mut junctions: Vec<JunctionFactorInput> = Vec::new();
            let mut seen = HashSet::new();
            for l in &lambdas {
                let gs = match enumerate_pf_all(rs, l) {
                    Ok(gs) => gs,
                    Err(e) => {
                        out.error(e);
                        continue;
                    }
                };
                for g in &gs {
                    for j in 1..g.num_edges() {
                        match junction_input(rs, g, j) {
                            Ok(inp) => {
                                if seen.insert((inp.vertex.clone(), inp.d_in.clone(), inp.d_out.clone())) {
                                    junctions.push(inp);
                                }
                            }
                            Err(e) => out.error(e),
                        }
                    }
                }
            }
            if rs.rank() >= 3 {
                let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed ^ i as u64);
                junctions.shuffle(&mut rng);
                junctions.truncate(self.cfg.samples);
            }
            let parts: Vec<CheckResult> = junctions
                .par_iter()
                .map(|inp| {
                    let mut c = CheckResult::new(name);
                    let base = junction_factor(rs, inp);
                    match (base, junction_factor_variants(rs, inp)) {
                        (Ok(base), Ok(vs)) => {
                            let bad = vs.iter().find(|(_, _, f)| *f != base);
                            c.record(bad.is_none(), || {
                                let (w, s, f) = bad.expect("a differing variant");
                                junction_json(
                                    rs,
                                    inp,
                                    json!({ "base": base.to_string(), "word": w, "sector": s, "factor": f.to_string() }),
                                )
                            });
                        }
                        (Err(e), _) | (_, Err(e)) => c.error(e),
                    }
                    c
                })
                .collect();
            for p in parts {
                out.merge(p);
            }
        }
        let alt = EngineOptions { alternate_choices: true, ..self.cfg.engine };
        let parts: Vec<CheckResult> = self
            .data()
            .par_iter()
            .map(|d| {
                let mut c = CheckResult::new(name);
                let rs = &self.systems[d.system];
                match (Engine::with_options(rs, alt).l_all(&d.lambda), &d.engine) {
                    (Ok(a), Ok(b)) => c.record(&a == b, || {
                        let mu = a.keys().chain(b.keys()).find(|m| a.get(*m) != b.get(*m)).cloned().unwrap_or_default();
                        l_json(rs, &d.lambda, &mu, &a.get(&mu).cloned().unwrap_or_default(), &d.engine_l(&mu))
                    }),
                    (Err(e), _) => c.error(e),
                    (_, Err(e)) => c.error(e.clone()),
                }
                c
            })
            .collect();
        for p in parts {
            out.merge(p);
        }
        out
    }
}

/// L for λ = 2ω₁ + ω₂ in type A₂ at μ = λ, 2ω₂, ω₁, within one second.
pub fn a2_example(opts: EngineOptions) -> CheckResult {
    let mut c = CheckResult::new("a2-example");
    let start = Instant::now();
    let rs = RootSystem::new("A2".parse().expect("valid type")).expect("A2");
    let engine = Engine::with_options(&rs, opts);
    let lambda = [2, 1];
    for (mu, want) in [([2, 1], "q^6"), ([0, 2], "q^5 - q^4"), ([1, 0], "2q^4 - 2q^3")] {
        match engine.l_polynomial(&lambda, &mu) {
            Ok(p) => c.record(p.to_string() == want, || {
                json!({ "type": "A2", "lambda": lambda, "mu": mu, "engine": p.to_string(), "expected": want })
            }),
            Err(e) => c.error(e),
        }
    }
    let elapsed = start.elapsed();
    c.record(elapsed.as_secs_f64() < 1.0, || json!({ "runtime_seconds": elapsed.as_secs_f64() }));
    c
}

pub fn run(cfg: VerifyConfig) -> Result<Report> {
    Ok(Verifier::new(cfg)?.run())
}
