use super::witness::AmalgamWitness;
use super::AmalgamError;
use crate::fincat::{check_retraction, hom_preorder, find_monoid_isomorphism, FinCategory, FinMonoid};
use crate::report::{first_failure, AxiomStatus, Status};
use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Group,
    Monoid,
}

impl Mode {
    pub fn axiom_names(self) -> &'static [&'static str] {
        match self {
            Mode::Group => &["A1", "A2", "A3", "A4", "A5", "A6"],
            Mode::Monoid => &["A1′", "A2′", "A3′", "A4′", "A5′", "A6′", "A7′"],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AmalgamCaps {
    /// Backtracking nodes in the retraction search, per weak initial object.
    pub retraction_nodes: usize,
    /// Complete retractions evaluated before giving up.
    pub candidates: usize,
}

impl Default for AmalgamCaps {
    fn default() -> Self {
        AmalgamCaps { retraction_nodes: 2_000_000, candidates: 20_000 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AmalgamOptions {
    /// Demand `End(0) ≅ Gᵒᵖ` for this `G`; otherwise `G = End(0)ᵒᵖ`.
    pub target: Option<FinMonoid>,
    pub caps: AmalgamCaps,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub mode: Mode,
    pub pass: bool,
    pub axioms: Vec<AxiomStatus>,
    /// All weak initial objects are pairwise isomorphic.
    pub weak_initial_unique: bool,
    /// Inversion is an isomorphism `G → Gᵒᵖ` (exactly when `G` is a group).
    pub target_self_opposite_by_inversion: bool,
    /// Witnesses evaluated; 0 when one was supplied.
    pub candidates_tried: usize,
    #[serde(skip)]
    pub witness: Option<AmalgamWitness>,
}

impl AxiomReport {
    pub fn first_failure(&self) -> Option<&AxiomStatus> {
        first_failure(&self.axioms)
    }

    /// Every axiom passes except possibly those listed.
    pub fn passes_except(&self, skip: &[&str]) -> bool {
        self.axioms.iter().all(|a| a.status.ok() || (skip.contains(&a.axiom.as_str()) && a.status != Status::NotEvaluated))
    }
}

pub(super) struct Ctx<'a> {
    c: &'a FinCategory,
    w: &'a AmalgamWitness,
    labels: Vec<usize>,
    one: usize,
}

fn preorder(c: &FinCategory, w: &AmalgamWitness) -> Vec<Vec<bool>> {
    let one = c.id(w.zero);
    let n = c.num_objects();
    (0..n).map(|x| (0..n).map(|y| c.hom(x, y).iter().any(|&f| w.retraction[f] == one)).collect()).collect()
}

fn a1(c: &FinCategory, w: &AmalgamWitness, mode: Mode, name: &str) -> AxiomStatus {
    let wi = c.weak_initial_objects();
    if !wi.objects.contains(&w.zero) {
        let x = (0..c.num_objects()).find(|&x| c.hom(w.zero, x).is_empty()).unwrap();
        return AxiomStatus::new(name, Status::Fail, format!("zero has no morphism to object {x}"))
            .with_witness(vec![w.zero, x]);
    }
    match mode {
        Mode::Group => match wi.objects.iter().find(|&&x| c.isomorphism(w.zero, x).is_none()) {
            Some(&x) => AxiomStatus::new(name, Status::Fail, format!("weak initial object {x} is not isomorphic to zero"))
                .with_witness(vec![w.zero, x]),
            None => AxiomStatus::new(name, Status::Pass, format!("{} weak initial object(s), all isomorphic", wi.objects.len()))
                .with_witness(wi.objects),
        },
        Mode::Monoid => {
            let leq = preorder(c, w);
            let n = c.num_objects();
            let least: Vec<usize> = (0..n).filter(|&x| (0..n).all(|y| leq[x][y])).collect();
            if !least.contains(&w.zero) {
                let y = (0..n).find(|&y| !leq[w.zero][y]).unwrap();
                return AxiomStatus::new(name, Status::Fail, format!("zero is not below object {y} in the F-preorder"))
                    .with_witness(vec![w.zero, y]);
            }
            match least.iter().find(|&&x| c.isomorphism(w.zero, x).is_none()) {
                Some(&x) => AxiomStatus::new(name, Status::Fail, format!("least object {x} is not isomorphic to zero"))
                    .with_witness(vec![w.zero, x]),
                None => AxiomStatus::new(
                    name,
                    Status::Pass,
                    format!("zero is weakly initial and least up to isomorphism ({} weak initial object(s))", wi.objects.len()),
                ),
            }
        }
    }
}

fn a2(c: &FinCategory, w: &AmalgamWitness, name: &str) -> AxiomStatus {
    if let Err(e) = check_retraction(c, w.zero, &w.retraction) {
        return AxiomStatus::new(name, Status::Fail, format!("F is not a functor: {e}"));
    }
    if let Some(&f) = c.hom(w.zero, w.zero).iter().find(|&&f| w.retraction[f] != f) {
        return AxiomStatus::new(name, Status::Fail, "F does not fix an endomorphism of zero").with_witness(vec![f]);
    }
    for x in 0..c.num_objects() {
        for y in 0..c.num_objects() {
            let hom = c.hom(x, y);
            for (i, &f) in hom.iter().enumerate() {
                if let Some(&g) = hom[i + 1..].iter().find(|&&g| w.retraction[g] == w.retraction[f]) {
                    return AxiomStatus::new(name, Status::Fail, format!("F is not faithful on Hom({x}, {y})"))
                        .with_witness(vec![f, g]);
                }
            }
        }
    }
    AxiomStatus::new(name, Status::Pass, "F is a faithful retraction onto Hom(0, 0)")
}

fn a3(c: &FinCategory, w: &AmalgamWitness, mode: Mode, name: &str) -> AxiomStatus {
    let (endo, _) = c.endo_monoid(w.zero);
    if endo.len() != w.target.len() {
        return AxiomStatus::new(
            name,
            Status::Fail,
            format!("Hom(0, 0) has {} elements, G has {}", endo.len(), w.target.len()),
        )
        .with_witness(vec![endo.len(), w.target.len()]);
    }
    if mode == Mode::Group && !w.target.is_group() {
        return AxiomStatus::new(name, Status::Fail, "G is not a group");
    }
    let op = w.target.opposite();
    if !endo.is_homomorphism(&op, &w.alpha) {
        let n = endo.len();
        let bad = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| w.alpha[endo.mul(a, b)] != op.mul(w.alpha[a], w.alpha[b]));
        let detail = match bad {
            Some(_) => "α(a∘b) ≠ α(b)·α(a)",
            None => "α does not preserve the unit",
        };
        return AxiomStatus::new(name, Status::Fail, detail).with_witness(bad.map(|(a, b)| vec![a, b]).unwrap_or_default());
    }
    if !endo.is_isomorphism(&op, &w.alpha) {
        return AxiomStatus::new(name, Status::Fail, "α is not bijective");
    }
    AxiomStatus::new(name, Status::Pass, format!("α: Hom(0, 0) ≅ Gᵒᵖ, |G| = {}", endo.len()))
}

fn a4(c: &FinCategory, w: &AmalgamWitness, name: &str) -> AxiomStatus {
    let leq = preorder(c, w);
    let (n, p) = (c.num_objects(), &w.poset);
    for x in 0..n {
        for y in 0..n {
            if leq[x][y] && !p.leq(w.beta[x], w.beta[y]) {
                return AxiomStatus::new(name, Status::Fail, "β is not monotone").with_witness(vec![x, y]);
            }
        }
    }
    for a in 0..p.len() {
        for b in p.above(a) {
            if !leq[w.beta_prime[a]][w.beta_prime[b]] {
                return AxiomStatus::new(name, Status::Fail, "β′ is not monotone").with_witness(vec![a, b]);
            }
        }
        if w.beta[w.beta_prime[a]] != a {
            return AxiomStatus::new(name, Status::Fail, "ββ′ ≠ 1").with_witness(vec![a]);
        }
    }
    for x in 0..n {
        let y = w.beta_prime[w.beta[x]];
        if !(leq[x][y] && leq[y][x]) {
            return AxiomStatus::new(name, Status::Fail, "x ≇ β′β(x) in the preorder").with_witness(vec![x]);
        }
    }
    AxiomStatus::new(name, Status::Pass, format!("preorder equivalent to a {}-element poset", p.len()))
}

impl Ctx<'_> {
    fn a5(&self, name: &str) -> AxiomStatus {
        for x in 0..self.c.num_objects() {
            let y = self.w.beta_prime[self.w.beta[x]];
            if !self.c.hom(x, y).iter().any(|&f| self.c.is_iso(f) && self.labels[f] == self.one) {
                return AxiomStatus::new(name, Status::Fail, format!("no isomorphism {x} → β′β({x}) with αF = 1"))
                    .with_witness(vec![x]);
            }
        }
        AxiomStatus::new(name, Status::Pass, "x ≅ β′β(x) over 1 for every object")
    }

    fn into(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.c.num_objects()).flat_map(move |x| self.c.hom(x, y).iter().copied())
    }

    fn a6(&self, name: &str) -> AxiomStatus {
        for y in 0..self.c.num_objects() {
            for m in 0..self.w.target.len() {
                if !self.into(y).any(|f| self.c.is_iso(f) && self.labels[f] == m) {
                    return AxiomStatus::new(name, Status::Fail, format!("no isomorphism into {y} over {}", self.w.target.label(m)))
                        .with_witness(vec![y, m]);
                }
            }
        }
        AxiomStatus::new(name, Status::Pass, "every object is the codomain of an isomorphism over every m")
    }

    /// `f′ = f ∘ g` for some `g` over 1.
    fn factors_through(&self, f2: usize, f: usize) -> bool {
        let c = self.c;
        c.hom(c.dom(f2), c.dom(f)).iter().any(|&g| self.labels[g] == self.one && c.compose(f, g) == f2)
    }

    /// Elements of `{f : cod f = y, αF(f) = m}` through which every other one factors.
    pub(super) fn maximal(&self, y: usize, m: usize) -> (Vec<usize>, Vec<usize>) {
        let s: Vec<usize> = self.into(y).filter(|&f| self.labels[f] == m).collect();
        let top = s.iter().copied().filter(|&f| s.iter().all(|&f2| self.factors_through(f2, f))).collect();
        (s, top)
    }

    fn a6_prime(&self, name: &str) -> AxiomStatus {
        for y in 0..self.c.num_objects() {
            for m in 0..self.w.target.len() {
                let (s, top) = self.maximal(y, m);
                if s.is_empty() || top.is_empty() {
                    let what = if s.is_empty() { "no morphism" } else { "no universal morphism" };
                    return AxiomStatus::new(name, Status::Fail, format!("{what} into {y} over {}", self.w.target.label(m)))
                        .with_witness(vec![y, m]);
                }
            }
        }
        AxiomStatus::new(name, Status::Pass, "every object has a universal morphism into it over every m")
    }

    fn a7_prime(&self, name: &str) -> AxiomStatus {
        let (c, g) = (self.c, &self.w.target);
        let k = g.len();
        for f in 0..c.num_morphisms() {
            let (x, y) = (c.dom(f), c.cod(f));
            let mut seen = vec![false; k * k];
            for z in 0..c.num_objects() {
                for &f2 in c.hom(x, z) {
                    for &f1 in c.hom(z, y) {
                        if c.compose(f1, f2) == f {
                            seen[self.labels[f1] * k + self.labels[f2]] = true;
                        }
                    }
                }
            }
            for m1 in 0..k {
                for m2 in 0..k {
                    if g.mul(m2, m1) == self.labels[f] && !seen[m1 * k + m2] {
                        return AxiomStatus::new(
                            name,
                            Status::Fail,
                            format!(
                                "morphism {} over {} = {}·{} has no matching factorization",
                                c.morphism(f).label,
                                g.label(self.labels[f]),
                                g.label(m2),
                                g.label(m1)
                            ),
                        )
                        .with_witness(vec![f, m1, m2]);
                    }
                }
            }
        }
        AxiomStatus::new(name, Status::Pass, "every factorization of αF(f) lifts")
    }
}

/// Evaluates the axioms of `mode` against `w`, stopping at the first failure.
pub fn evaluate(c: &FinCategory, w: &AmalgamWitness, mode: Mode) -> Result<AxiomReport, AmalgamError> {
    w.validate_shape(c)?;
    let names = mode.axiom_names();
    let mut axioms = Vec::new();
    let done = |mut axioms: Vec<AxiomStatus>| {
        let k = axioms.len();
        axioms.extend(names[k..].iter().map(|a| AxiomStatus::not_evaluated(a)));
        let pass = axioms.iter().all(|a| a.status.ok());
        AxiomReport {
            mode,
            pass,
            axioms,
            weak_initial_unique: c.weak_initial_objects().unique_up_to_iso,
            target_self_opposite_by_inversion: w.target.inversion_to_opposite().is_some(),
            candidates_tried: 0,
            witness: Some(w.clone()),
        }
    };
    macro_rules! step {
        ($e:expr) => {{
            let s = $e;
            let ok = s.status.ok();
            axioms.push(s);
            if !ok {
                return Ok(done(axioms));
            }
        }};
    }
    step!(a1(c, w, mode, names[0]));
    step!(a2(c, w, names[1]));
    step!(a3(c, w, mode, names[2]));
    step!(a4(c, w, names[3]));
    let ctx = Ctx::new(c, w)?;
    step!(ctx.a5(names[4]));
    match mode {
        Mode::Group => step!(ctx.a6(names[5])),
        Mode::Monoid => {
            step!(ctx.a6_prime(names[5]));
            step!(ctx.a7_prime(names[6]));
        }
    }
    Ok(done(axioms))
}

impl<'a> Ctx<'a> {
    pub(super) fn new(c: &'a FinCategory, w: &'a AmalgamWitness) -> Result<Self, AmalgamError> {
        w.validate_shape(c)?;
        let labels: Option<Vec<usize>> = w.labels(c).into_iter().collect();
        let labels = labels.ok_or_else(|| AmalgamError::InvalidWitness("F leaves Hom(0, 0)".into()))?;
        Ok(Ctx { c, w, labels, one: w.target.unit() })
    }

    pub(super) fn label(&self, f: usize) -> usize {
        self.labels[f]
    }
}

const UNSET: usize = usize::MAX;

struct RetractionSearch<'a> {
    c: &'a FinCategory,
    endo: Vec<usize>,
    order: Vec<usize>,
    f: Vec<usize>,
    visited: usize,
    cap: usize,
}

impl RetractionSearch<'_> {
    fn assign(&mut self, f: usize, a: usize, trail: &mut Vec<usize>) -> bool {
        let c = self.c;
        let mut queue = vec![(f, a)];
        while let Some((f, a)) = queue.pop() {
            if self.f[f] != UNSET {
                if self.f[f] != a {
                    return false;
                }
                continue;
            }
            if c.hom(c.dom(f), c.cod(f)).iter().any(|&g| self.f[g] == a) {
                return false;
            }
            self.f[f] = a;
            trail.push(f);
            for &h in c.out_of(c.cod(f)) {
                if self.f[h] != UNSET {
                    queue.push((c.compose(h, f), c.compose(self.f[h], a)));
                }
            }
            let x = c.dom(f);
            for y in 0..c.num_objects() {
                for &h in c.hom(y, x) {
                    if self.f[h] != UNSET {
                        queue.push((c.compose(f, h), c.compose(a, self.f[h])));
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, trail: Vec<usize>) {
        for f in trail {
            self.f[f] = UNSET;
        }
    }

    fn run(
        &mut self,
        k: usize,
        emit: Emit<'_>,
    ) -> Result<ControlFlow<()>, AmalgamError> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(AmalgamError::SearchCapExceeded { what: "retraction search", cap: self.cap });
        }
        let Some(&f) = self.order[k..].iter().find(|&&f| self.f[f] == UNSET) else {
            return emit(&self.f);
        };
        let k = self.order.iter().position(|&g| g == f).unwrap();
        for i in 0..self.endo.len() {
            let a = self.endo[i];
            let mut trail = Vec::new();
            if self.assign(f, a, &mut trail) && self.run(k + 1, emit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
            self.undo(trail);
        }
        Ok(ControlFlow::Continue(()))
    }
}

type Emit<'a> = &'a mut dyn FnMut(&[usize]) -> Result<ControlFlow<()>, AmalgamError>;

/// Enumerates functorial, hom-wise injective retractions onto `Hom(zero, zero)`,
/// identity candidates first.
fn for_each_retraction(
    c: &FinCategory,
    zero: usize,
    cap: usize,
    emit: Emit<'_>,
) -> Result<(), AmalgamError> {
    let one = c.id(zero);
    let mut endo = vec![one];
    endo.extend(c.hom(zero, zero).iter().copied().filter(|&e| e != one));
    let mut order: Vec<usize> = c.out_of(zero).to_vec();
    order.extend((0..c.num_morphisms()).filter(|&f| c.dom(f) != zero));
    let mut s = RetractionSearch { c, endo: endo.clone(), order, f: vec![UNSET; c.num_morphisms()], visited: 0, cap };
    let mut trail = Vec::new();
    for &e in &endo {
        if !s.assign(e, e, &mut trail) {
            return Ok(());
        }
    }
    for x in 0..c.num_objects() {
        if !s.assign(c.id(x), one, &mut trail) {
            return Ok(());
        }
    }
    let _ = s.run(0, emit)?;
    Ok(())
}

/// Looks for a witness, trying weak initial objects in index order and
/// retractions in search order; returns the first that passes every axiom,
/// otherwise the report of the first candidate evaluated.
pub fn search_witness(c: &FinCategory, mode: Mode, opts: &AmalgamOptions) -> Result<AxiomReport, AmalgamError> {
    let mut first: Option<AxiomReport> = None;
    let mut found: Option<AxiomReport> = None;
    let mut tried = 0usize;
    for z in c.weak_initial_objects().objects {
        let (endo, _) = c.endo_monoid(z);
        let (target, alpha) = match &opts.target {
            Some(g) => match find_monoid_isomorphism(&endo, &g.opposite()) {
                Some(a) => (g.clone(), a),
                None => (g.clone(), Vec::new()),
            },
            None => (endo.opposite(), (0..endo.len()).collect()),
        };
        let mut emit = |r: &[usize]| -> Result<ControlFlow<()>, AmalgamError> {
            tried += 1;
            if tried > opts.caps.candidates {
                return Err(AmalgamError::SearchCapExceeded { what: "witness candidates", cap: opts.caps.candidates });
            }
            let pre = hom_preorder(c, z, r).expect("search emits functorial retractions");
            let w = AmalgamWitness {
                zero: z,
                retraction: r.to_vec(),
                alpha: if alpha.is_empty() { vec![0; endo.len()] } else { alpha.clone() },
                target: target.clone(),
                beta: pre.class_of.clone(),
                beta_prime: pre.classes.iter().map(|m| m[0]).collect(),
                poset: pre.quotient,
            };
            let report = if alpha.is_empty() {
                let mut axioms = vec![
                    AxiomStatus::new(mode.axiom_names()[0], Status::Pass, "zero is weakly initial"),
                    AxiomStatus::new(mode.axiom_names()[1], Status::Pass, "retraction found by search"),
                    AxiomStatus::new(
                        mode.axiom_names()[2],
                        Status::Fail,
                        format!("Hom(0, 0) ({} elements) is not isomorphic to Gᵒᵖ", endo.len()),
                    ),
                ];
                axioms.extend(mode.axiom_names()[3..].iter().map(|a| AxiomStatus::not_evaluated(a)));
                AxiomReport {
                    mode,
                    pass: false,
                    axioms,
                    weak_initial_unique: c.weak_initial_objects().unique_up_to_iso,
                    target_self_opposite_by_inversion: target.inversion_to_opposite().is_some(),
                    candidates_tried: 0,
                    witness: Some(w),
                }
            } else {
                evaluate(c, &w, mode)?
            };
            if report.pass {
                found = Some(report);
                return Ok(ControlFlow::Break(()));
            }
            if first.is_none() {
                first = Some(report);
            }
            Ok(ControlFlow::Continue(()))
        };
        for_each_retraction(c, z, opts.caps.retraction_nodes, &mut emit)?;
        if found.is_some() {
            break;
        }
    }
    let mut report = match found.or(first) {
        Some(r) => r,
        None => {
            let names = mode.axiom_names();
            let wi = c.weak_initial_objects();
            let mut axioms = Vec::new();
            if wi.objects.is_empty() {
                axioms.push(AxiomStatus::new(names[0], Status::Fail, "no weak initial object"));
            } else {
                axioms.push(AxiomStatus::new(names[0], Status::Pass, "weak initial object found"));
                axioms.push(AxiomStatus::new(names[1], Status::Fail, "no faithful retraction onto Hom(0, 0)"));
            }
            let k = axioms.len();
            axioms.extend(names[k..].iter().map(|a| AxiomStatus::not_evaluated(a)));
            AxiomReport {
                mode,
                pass: false,
                axioms,
                weak_initial_unique: wi.unique_up_to_iso,
                target_self_opposite_by_inversion: false,
                candidates_tried: 0,
                witness: None,
            }
        }
    };
    report.candidates_tried = tried;
    Ok(report)
}

pub fn check_group_amalgamation(c: &FinCategory, witness: Option<&AmalgamWitness>) -> Result<AxiomReport, AmalgamError> {
    check_amalgamation_with(c, witness, Mode::Group, &AmalgamOptions::default())
}

pub fn check_monoid_amalgamation(c: &FinCategory, witness: Option<&AmalgamWitness>) -> Result<AxiomReport, AmalgamError> {
    check_amalgamation_with(c, witness, Mode::Monoid, &AmalgamOptions::default())
}

pub fn check_amalgamation_with(
    c: &FinCategory,
    witness: Option<&AmalgamWitness>,
    mode: Mode,
    opts: &AmalgamOptions,
) -> Result<AxiomReport, AmalgamError> {
    match witness {
        Some(w) => evaluate(c, w, mode),
        None => search_witness(c, mode, opts),
    }
}
