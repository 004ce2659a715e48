//! Executable checks of the collapsing and adjunction theorems and of the
//! Morse and Pitcher inequalities on concrete instances.
//!
//! Each check returns a [`TheoremReport`]. A conclusion failure only counts
//! as a violation when every hypothesis holds; otherwise the report is
//! inapplicable.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{self, AdmissibilityMode, Coefficients, HomologyError, HomologyResult};
use crate::matching::{self, Matching, RegularityMode};
use crate::morse::{self, EventKind, FiltrationEvent, MorseError, MorseFunction};
use crate::poset::{Poset, PosetError, Subposet};
use crate::rational::{self, Value};
use crate::reduction::{Tri, TriState};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("empty interval ({a}, {b}]")]
    BadInterval { a: String, b: String },
    #[error("hypothesis `{0}` cannot be satisfied")]
    HypothesesUnsatisfied(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Morse(#[from] MorseError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub state: TriState,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportData {
    None,
    Collapse {
        steps: Vec<FiltrationEvent>,
    },
    Adjunction {
        boundary: Vec<String>,
        before: HomologyResult,
        after: HomologyResult,
    },
    Inequalities {
        critical_counts: Vec<usize>,
        betti: Vec<CoefficientBetti>,
        torsion_counts: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientBetti {
    pub coefficients: Coefficients,
    pub betti: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusions: Vec<Conclusion>,
    /// Weak-homotopy claims, recorded but never decided.
    pub evidence: Vec<Hypothesis>,
    pub witnesses: Vec<String>,
    pub verdict: Verdict,
    pub data: ReportData,
}

impl TheoremReport {
    fn new(theorem: &str) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            evidence: Vec::new(),
            witnesses: Vec::new(),
            verdict: Verdict::Inapplicable,
            data: ReportData::None,
        }
    }

    fn hypothesis(&mut self, name: &str, state: TriState) {
        self.hypotheses.push(Hypothesis { name: name.to_string(), state });
    }

    fn hypothesis_bool(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.hypothesis(name, if ok { TriState::yes(detail) } else { TriState::no(detail) });
    }

    fn conclude(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.conclusions.push(Conclusion { name: name.to_string(), passed, detail: detail.into() });
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.state.value == Tri::Yes)
    }

    pub fn conclusions_hold(&self) -> bool {
        self.conclusions.iter().all(|c| c.passed)
    }

    /// Failed hypothesis names.
    pub fn failed_hypotheses(&self) -> Vec<&str> {
        self.hypotheses.iter().filter(|h| h.state.value != Tri::Yes).map(|h| h.name.as_str()).collect()
    }

    fn finish(mut self) -> Self {
        self.verdict = if !self.hypotheses_hold() {
            Verdict::Inapplicable
        } else if self.conclusions_hold() {
            Verdict::Holds
        } else {
            Verdict::Violated
        };
        self
    }
}

/// Every matched edge has acyclic `Û_x − {w}`.
fn matching_admissible(m: &Matching, mode: AdmissibilityMode) -> TriState {
    let p = m.base();
    TriState::all(
        m.pairs()
            .iter()
            .map(|&(w, x)| {
                let s = homology::edge_admissibility(p, w, x, mode);
                TriState { reason: format!("{} ≺ {}: {}", p.id(w), p.id(x), s.reason), ..s }
            })
            .collect::<Vec<_>>(),
    )
}

fn down_wide_state(p: &Poset) -> TriState {
    match p.is_down_wide() {
        (true, _) => TriState::yes("down-wide"),
        (false, w) => TriState::no(format!("`{}` covers fewer than two elements", w.unwrap_or_default())),
    }
}

fn relative(p: &Poset, big: &FixedBitSet, small: &FixedBitSet) -> Result<HomologyResult, HomologyError> {
    let bigp = p.induced(big);
    let members = small.ones().map(|x| bigp.index_of(p.id(x)).expect("small inside big"));
    let mut bits = FixedBitSet::with_capacity(bigp.len());
    members.for_each(|x| bits.insert(x));
    homology::relative_homology(&bigp, &Subposet::new(&bigp, bits))
}

fn in_interval(v: &Value, a: &Value, b: &Value) -> bool {
    a < v && v <= b
}

/// Checks that no critical value in `(a, b]` means no change in homology,
/// stepping through the filtration one element at a time.
pub fn check_collapse_interval(f: &MorseFunction, a: &Value, b: &Value) -> Result<TheoremReport, VerifyError> {
    if a >= b {
        return Err(VerifyError::BadInterval { a: rational::format(a), b: rational::format(b) });
    }
    let p = f.base().as_ref();
    let mut r = TheoremReport::new("collapse");
    let (morse_ok, violations) = morse::is_morse(f);
    r.hypothesis_bool("morse", morse_ok, if morse_ok { "Morse".to_string() } else { violations[0].to_string() });
    if !morse_ok {
        return Ok(r.finish());
    }
    r.hypothesis("down-wide", down_wide_state(p));
    let parts = p.component_indices().len();
    r.hypothesis_bool("connected", parts == 1, format!("{parts} components"));
    let (excl, bad) = morse::satisfies_exclusion(f)?;
    r.hypothesis_bool("exclusion", excl, bad.map_or("holds".into(), |x| format!("fails at `{x}`")));
    if !excl {
        return Ok(r.finish());
    }
    let m = morse::matching_from_function(f)?;
    r.hypothesis("homologically admissible", matching_admissible(&m, AdmissibilityMode::Homological));
    let crit_inside: Vec<String> = morse::critical_values(f)?
        .iter()
        .filter(|v| in_interval(v, a, b))
        .map(rational::format)
        .collect();
    r.hypothesis_bool(
        "no critical values",
        crit_inside.is_empty(),
        if crit_inside.is_empty() { "none".to_string() } else { crit_inside.join(", ") },
    );

    let (_, steps) = morse::filtration_steps(f)?;
    let inside: Vec<&morse::Step> = steps.iter().filter(|s| in_interval(&s.event.value, a, b)).collect();
    let xa = morse::sublevel_set(f, a);
    let xb = morse::sublevel_set(f, b);
    let rel = relative(p, &xb, &xa)?;
    r.conclude("relative homology vanishes", rel.is_zero(), format!("betti {:?}", rel.bettis()));
    for s in &inside {
        if s.event.b0_after > s.event.b0_before {
            r.witnesses.push(format!(
                "b₀ rises from {} to {} at value {} (`{}`)",
                s.event.b0_before,
                s.event.b0_after,
                rational::format(&s.event.value),
                s.event.element
            ));
        }
    }
    let mut clean = true;
    for s in &inside {
        match &s.event.kind {
            EventKind::NoChange => {}
            EventKind::BeatPair { v, w } => {
                let (vi, wi) = (p.require(v)?, p.require(w)?);
                let mut u_hat = p.down_set(vi).clone();
                u_hat.set(vi, false);
                u_hat.set(wi, false);
                let local = relative(p, p.down_set(vi), &u_hat)?;
                let step = relative(p, &s.after, &s.before)?;
                let same = local.same_groups(&step);
                r.conclude(
                    &format!("excision at {v}"),
                    same,
                    format!("local {:?}, step {:?}", local.bettis(), step.bettis()),
                );
                if homology::edge_admissibility(p, wi, vi, AdmissibilityMode::One).is_yes() {
                    let state = morse::gamma_evidence(p, &s.after, vi, wi);
                    r.evidence.push(Hypothesis { name: format!("{v} is a γ-point once {w} is removed"), state });
                }
            }
            other => {
                clean = false;
                r.witnesses.push(format!("step at `{}` is {other:?}", s.event.element));
            }
        }
    }
    r.conclude("steps are beat pairs", clean, format!("{} steps", inside.len()));
    r.data = ReportData::Collapse { steps: inside.iter().map(|s| s.event.clone()).collect() };
    Ok(r.finish())
}

/// Checks that a single critical element entering at `(a, b]` is attached
/// along its boundary.
///
/// Instead of global order preservation, only the elements above `x` are
/// required to take larger values.
pub fn check_adjunction(f: &MorseFunction, a: &Value, b: &Value, x: &str) -> Result<TheoremReport, VerifyError> {
    if a >= b {
        return Err(VerifyError::BadInterval { a: rational::format(a), b: rational::format(b) });
    }
    let p = f.base().as_ref();
    let xi = p.require(x)?;
    if !morse::is_morse(f).0 {
        return Err(VerifyError::HypothesesUnsatisfied("morse".into()));
    }
    let mut r = TheoremReport::new("adjunction");
    let (excl, bad) = morse::satisfies_exclusion(f)?;
    r.hypothesis_bool("exclusion", excl, bad.map_or("holds".into(), |y| format!("fails at `{y}`")));
    let critical = morse::critical_indices(f)?.contains(&xi);
    r.hypothesis_bool("critical", critical, format!("`{x}` is {}", if critical { "critical" } else { "regular" }));
    let fx = f.value(xi);
    r.hypothesis_bool("value in interval", in_interval(fx, a, b), rational::format(fx));
    let others: Vec<&str> = (0..p.len())
        .filter(|&y| y != xi && in_interval(f.value(y), a, b))
        .map(|y| p.id(y))
        .collect();
    r.hypothesis_bool("only element in interval", others.is_empty(), others.join(", "));
    let lower_above: Vec<&str> =
        p.up_set(xi).ones().filter(|&z| z != xi && f.value(z) <= fx).map(|z| p.id(z)).collect();
    r.hypothesis_bool("larger values above", lower_above.is_empty(), lower_above.join(", "));

    let xa = morse::sublevel_set(f, a);
    let xb = morse::sublevel_set(f, b);
    let added: Vec<usize> = xb.difference(&xa).collect();
    r.conclude(
        "single element added",
        added == [xi],
        added.iter().map(|&y| p.id(y)).collect::<Vec<_>>().join(", "),
    );
    let mut u_hat = p.down_set(xi).clone();
    u_hat.set(xi, false);
    let missing: Vec<&str> = u_hat.difference(&xa).map(|y| p.id(y)).collect();
    r.conclude("boundary already present", missing.is_empty(), missing.join(", "));
    if !missing.is_empty() {
        r.witnesses.push(format!("boundary elements outside the lower sublevel: {}", missing.join(", ")));
    }
    r.data = ReportData::Adjunction {
        boundary: p.lower_covers(xi).iter().map(|&y| p.id(y).to_string()).collect(),
        before: homology::poset_homology(&p.induced(&xa), false),
        after: homology::poset_homology(&p.induced(&xb), false),
    };
    Ok(r.finish())
}

fn inequality_hypotheses(r: &mut TheoremReport, m: &Matching) {
    let p = m.base();
    r.hypothesis("down-wide", down_wide_state(p));
    match morse::function_from_matching(m) {
        Ok(f) => {
            r.hypothesis_bool("order-preserving function", f.is_order_preserving(), "integrated");
            let excl = morse::satisfies_exclusion(&f).map(|e| e.0).unwrap_or(false);
            r.hypothesis_bool("exclusion", excl, "integrated function");
        }
        Err(e) => r.hypothesis("order-preserving function", TriState::no(e.to_string())),
    }
    r.hypothesis("homologically admissible", matching_admissible(m, AdmissibilityMode::Homological));
    let regular = matching::regularity(m, RegularityMode::Homology).unwrap_or_else(|e| TriState::no(e.to_string()));
    r.hypothesis("homology-regular", regular);
}

struct Counts {
    m: Vec<i64>,
    betti: Vec<(Coefficients, Vec<i64>)>,
    mu: Vec<i64>,
}

fn counts(m: &Matching) -> Counts {
    let p = m.base();
    let top = p.height().max(0) as usize;
    let mut crit = vec![0i64; top + 1];
    for x in m.critical_indices() {
        crit[p.height_of(x)] += 1;
    }
    let k = homology::order_complex(p);
    let len = crit.len().max((k.dimension() + 1).max(0) as usize);
    crit.resize(len, 0);
    let mut betti: Vec<(Coefficients, Vec<i64>)> = Vec::new();
    let mut mu = Vec::new();
    for c in [Coefficients::Integers, Coefficients::PrimeField(2), Coefficients::PrimeField(3)] {
        let h = homology::homology(&k, c, false).expect("prime coefficients");
        if c == Coefficients::Integers {
            mu = (0..len).map(|i| h.mu(i) as i64).collect();
        }
        betti.push((c, (0..len).map(|i| h.betti(i) as i64).collect()));
    }
    // H₀ and the top group are free
    if let Some(first) = mu.first_mut() {
        *first = 0;
    }
    let deg = k.dimension();
    if deg >= 0 && (deg as usize) < mu.len() {
        mu[deg as usize] = 0;
    }
    Counts { m: crit, betti, mu }
}

fn alternating(v: &[i64], n: usize) -> i64 {
    (0..=n).map(|i| if (n - i) % 2 == 0 { v[i] } else { -v[i] }).sum()
}

fn coeff_name(c: Coefficients) -> String {
    match c {
        Coefficients::Integers => "Z".into(),
        Coefficients::PrimeField(q) => format!("F{q}"),
    }
}

fn inequality_data(c: &Counts) -> ReportData {
    ReportData::Inequalities {
        critical_counts: c.m.iter().map(|&x| x as usize).collect(),
        betti: c
            .betti
            .iter()
            .map(|(k, b)| CoefficientBetti { coefficients: *k, betti: b.iter().map(|&x| x as usize).collect() })
            .collect(),
        torsion_counts: c.mu.iter().map(|&x| x as usize).collect(),
    }
}

/// Strong and weak inequalities over ℤ, F₂ and F₃, plus the Euler
/// characteristic identity.
pub fn morse_inequalities(m: &Matching) -> TheoremReport {
    let mut r = TheoremReport::new("morse inequalities");
    inequality_hypotheses(&mut r, m);
    let c = counts(m);
    for (k, b) in &c.betti {
        let name = coeff_name(*k);
        for n in 0..c.m.len() {
            let (lhs, rhs) = (alternating(&c.m, n), alternating(b, n));
            r.conclude(&format!("strong n={n} over {name}"), lhs >= rhs, format!("{lhs} >= {rhs}"));
            r.conclude(&format!("weak i={n} over {name}"), c.m[n] >= b[n], format!("{} >= {}", c.m[n], b[n]));
        }
        let chi_m: i64 = c.m.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).sum();
        let chi_b: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).sum();
        r.conclude(&format!("euler characteristic over {name}"), chi_m == chi_b, format!("{chi_m} = {chi_b}"));
    }
    r.data = inequality_data(&c);
    r.finish()
}

/// Inequalities sharpened by the number `μ_n` of torsion coefficients of
/// `H_n` over ℤ.
pub fn pitcher_inequalities(m: &Matching) -> TheoremReport {
    let mut r = TheoremReport::new("pitcher inequalities");
    inequality_hypotheses(&mut r, m);
    let c = counts(m);
    let b = &c.betti[0].1;
    for n in 0..c.m.len() {
        let prev = if n == 0 { 0 } else { c.mu[n - 1] };
        let rhs = b[n] + c.mu[n] + prev;
        r.conclude(&format!("pitcher n={n}"), c.m[n] >= rhs, format!("{} >= {rhs}", c.m[n]));
        let (lhs, rhs) = (alternating(&c.m, n), alternating(b, n) + c.mu[n]);
        r.conclude(&format!("strong pitcher n={n}"), lhs >= rhs, format!("{lhs} >= {rhs}"));
    }
    r.data = inequality_data(&c);
    r.finish()
}
