//! Componential presentations: symmetric operads, entries-only cyclic operads
//! and exchangeable-output cyclic operads, given by partial compositions,
//! units and (for the last kind) output-exchange actions.
//!
//! Operations are total functions that validate their preconditions and
//! return an error otherwise. Checkers instantiate every law over all sets
//! of a bounded atom pool; an instance is skipped when its preconditions
//! fail or when an intermediate set exceeds the size bound.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::labels::{all_bijections, Bijection, FiniteSet, Label};
use crate::report::Report;
use crate::species::{check_functoriality, Species};
use crate::structure::Structure;

/// A structure together with the set it lives on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Operand {
    pub set: FiniteSet,
    pub value: Structure,
}

impl Operand {
    pub fn new(set: FiniteSet, value: Structure) -> Operand {
        Operand { set, value }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.value, self.set)
    }
}

pub type UnitFn = Arc<dyn Fn(&Label) -> Result<Structure> + Send + Sync>;
pub type PairUnitFn = Arc<dyn Fn(&FiniteSet) -> Result<Structure> + Send + Sync>;
pub type InsertFn = Arc<dyn Fn(&Operand, &Label, &Operand) -> Result<Structure> + Send + Sync>;
pub type GraftFn =
    Arc<dyn Fn(&Operand, &Label, &Operand, &Label) -> Result<Structure> + Send + Sync>;
pub type ActionFn = Arc<dyn Fn(&Label, &Operand) -> Result<Structure> + Send + Sync>;

fn require_member(label: &Label, set: &FiniteSet) -> Result<()> {
    if set.contains(label) {
        Ok(())
    } else {
        Err(Error::NotAnElement {
            label: label.to_string(),
            set: set.to_string(),
        })
    }
}

/// A symmetric operad given by `id_x` and `f ∘_x g`.
#[derive(Clone)]
pub struct OperadPresentation {
    pub name: String,
    pub carrier: Species,
    unit: UnitFn,
    compose: InsertFn,
}

impl OperadPresentation {
    pub fn new(
        name: impl Into<String>,
        carrier: Species,
        unit: impl Fn(&Label) -> Result<Structure> + Send + Sync + 'static,
        compose: impl Fn(&Operand, &Label, &Operand) -> Result<Structure> + Send + Sync + 'static,
    ) -> OperadPresentation {
        OperadPresentation {
            name: name.into(),
            carrier,
            unit: Arc::new(unit),
            compose: Arc::new(compose),
        }
    }

    /// `id_x ∈ O({x})`.
    pub fn unit(&self, x: &Label) -> Result<Structure> {
        (self.unit)(x)
    }

    pub fn unit_operand(&self, x: &Label) -> Result<Operand> {
        Ok(Operand::new(FiniteSet::singleton(x.clone()), self.unit(x)?))
    }

    /// `f ∘_x g`, defined when `x ∈ X` and `(X∖{x}) ∩ Y = ∅`.
    pub fn compose(&self, f: &Operand, x: &Label, g: &Operand) -> Result<Operand> {
        require_member(x, &f.set)?;
        let rest = f.set.remove(x);
        if !rest.is_disjoint(&g.set) {
            return Err(Error::precondition(format!(
                "∘_{x}: {rest} and {} overlap",
                g.set
            )));
        }
        let value = (self.compose)(f, x, g)?;
        Ok(Operand::new(rest.union(&g.set), value))
    }

    pub fn with_name(&self, name: impl Into<String>) -> OperadPresentation {
        OperadPresentation {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn with_unit(
        &self,
        unit: impl Fn(&Label) -> Result<Structure> + Send + Sync + 'static,
    ) -> OperadPresentation {
        OperadPresentation {
            unit: Arc::new(unit),
            ..self.clone()
        }
    }

    pub fn with_compose(
        &self,
        compose: impl Fn(&Operand, &Label, &Operand) -> Result<Structure> + Send + Sync + 'static,
    ) -> OperadPresentation {
        OperadPresentation {
            compose: Arc::new(compose),
            ..self.clone()
        }
    }

    pub fn with_carrier(&self, carrier: Species) -> OperadPresentation {
        OperadPresentation {
            carrier,
            ..self.clone()
        }
    }
}

/// A constant-free entries-only cyclic operad given by `id_{x,y}` and `f ₓ∘ᵧ g`.
#[derive(Clone)]
pub struct EntriesOnlyPresentation {
    pub name: String,
    pub carrier: Species,
    unit: PairUnitFn,
    compose: GraftFn,
}

impl EntriesOnlyPresentation {
    /// The unit receives the two-element set it lives on.
    pub fn new(
        name: impl Into<String>,
        carrier: Species,
        unit: impl Fn(&FiniteSet) -> Result<Structure> + Send + Sync + 'static,
        compose: impl Fn(&Operand, &Label, &Operand, &Label) -> Result<Structure>
            + Send
            + Sync
            + 'static,
    ) -> EntriesOnlyPresentation {
        EntriesOnlyPresentation {
            name: name.into(),
            carrier,
            unit: Arc::new(unit),
            compose: Arc::new(compose),
        }
    }

    /// `id_{x,y} ∈ C({x,y})`.
    pub fn unit(&self, x: &Label, y: &Label) -> Result<Structure> {
        if x == y {
            return Err(Error::precondition(format!(
                "id_{{{x},{y}}} needs two labels"
            )));
        }
        (self.unit)(&FiniteSet::new([x.clone(), y.clone()]))
    }

    pub fn unit_operand(&self, x: &Label, y: &Label) -> Result<Operand> {
        let value = self.unit(x, y)?;
        Ok(Operand::new(FiniteSet::new([x.clone(), y.clone()]), value))
    }

    /// `f ₓ∘ᵧ g`, defined when `x ∈ X`, `y ∈ Y` and `(X∖{x}) ∩ (Y∖{y}) = ∅`.
    pub fn compose(&self, f: &Operand, x: &Label, g: &Operand, y: &Label) -> Result<Operand> {
        require_member(x, &f.set)?;
        require_member(y, &g.set)?;
        let (left, right) = (f.set.remove(x), g.set.remove(y));
        if !left.is_disjoint(&right) {
            return Err(Error::precondition(format!(
                "{x}∘{y}: {left} and {right} overlap"
            )));
        }
        let value = (self.compose)(f, x, g, y)?;
        Ok(Operand::new(left.union(&right), value))
    }

    pub fn with_name(&self, name: impl Into<String>) -> EntriesOnlyPresentation {
        EntriesOnlyPresentation {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn with_unit(
        &self,
        unit: impl Fn(&FiniteSet) -> Result<Structure> + Send + Sync + 'static,
    ) -> EntriesOnlyPresentation {
        EntriesOnlyPresentation {
            unit: Arc::new(unit),
            ..self.clone()
        }
    }

    pub fn with_compose(
        &self,
        compose: impl Fn(&Operand, &Label, &Operand, &Label) -> Result<Structure>
            + Send
            + Sync
            + 'static,
    ) -> EntriesOnlyPresentation {
        EntriesOnlyPresentation {
            compose: Arc::new(compose),
            ..self.clone()
        }
    }

    pub fn with_carrier(&self, carrier: Species) -> EntriesOnlyPresentation {
        EntriesOnlyPresentation {
            carrier,
            ..self.clone()
        }
    }
}

/// A symmetric operad with actions `D_x` exchanging the output with input `x`.
#[derive(Clone)]
pub struct ExchangeableOutputPresentation {
    pub base: OperadPresentation,
    dact: ActionFn,
}

impl ExchangeableOutputPresentation {
    pub fn new(
        base: OperadPresentation,
        dact: impl Fn(&Label, &Operand) -> Result<Structure> + Send + Sync + 'static,
    ) -> ExchangeableOutputPresentation {
        ExchangeableOutputPresentation {
            base,
            dact: Arc::new(dact),
        }
    }

    pub fn name(&self) -> &str {
        &self.base.name
    }

    pub fn carrier(&self) -> &Species {
        &self.base.carrier
    }

    /// `D_x(f)`, for `x ∈ X`.
    pub fn dact(&self, x: &Label, f: &Operand) -> Result<Operand> {
        require_member(x, &f.set)?;
        Ok(Operand::new(f.set.clone(), (self.dact)(x, f)?))
    }

    /// `D_xy(f) = D_x(f)^σ` where `σ` renames `x` to `y`; needs `y ∉ X∖{x}`.
    pub fn dact_renamed(&self, f: &Operand, x: &Label, y: &Label) -> Result<Operand> {
        let d = self.dact(x, f)?;
        let sigma = Bijection::renaming(&f.set, x, y)?;
        Ok(Operand::new(
            sigma.domain().clone(),
            self.base.carrier.transport(&sigma, &d.value)?,
        ))
    }

    pub fn with_base(&self, base: OperadPresentation) -> ExchangeableOutputPresentation {
        ExchangeableOutputPresentation {
            base,
            dact: self.dact.clone(),
        }
    }

    pub fn with_dact(
        &self,
        dact: impl Fn(&Label, &Operand) -> Result<Structure> + Send + Sync + 'static,
    ) -> ExchangeableOutputPresentation {
        ExchangeableOutputPresentation {
            base: self.base.clone(),
            dact: Arc::new(dact),
        }
    }
}

/// `γ(f; x₁ ↦ g₁, ..., xₙ ↦ gₙ)`: inserts every `gᵢ` at `xᵢ` at once.
///
/// The inputs `xᵢ` are first renamed to fresh labels so that the sets `Yᵢ`
/// may reuse the names `xⱼ`; the insertions are then folded in the order
/// given.
pub fn simultaneous_composition(
    p: &OperadPresentation,
    f: &Operand,
    assignment: &[(Label, Operand)],
) -> Result<Operand> {
    let inputs = FiniteSet::new(assignment.iter().map(|(x, _)| x.clone()));
    if inputs.len() != assignment.len() {
        return Err(Error::precondition(
            "inputs of a simultaneous composition repeat",
        ));
    }
    if !inputs.is_subset(&f.set) {
        return Err(Error::NotASubset(inputs.to_string(), f.set.to_string()));
    }
    let mut seen = f.set.difference(&inputs);
    for (_, g) in assignment {
        if !seen.is_disjoint(&g.set) {
            return Err(Error::precondition(format!(
                "{} meets the other sets of the composition",
                g.set
            )));
        }
        seen = seen.union(&g.set);
    }
    let everything = assignment
        .iter()
        .fold(f.set.clone(), |acc, (_, g)| acc.union(&g.set));
    let mut fresh = Vec::with_capacity(assignment.len());
    let mut pool = everything;
    for _ in assignment {
        let s = pool.star();
        pool = pool.insert(s.clone());
        fresh.push(s);
    }
    let mut current = f.clone();
    for ((x, _), s) in assignment.iter().zip(&fresh) {
        let sigma = Bijection::renaming(&current.set, x, s)?;
        current = Operand::new(
            sigma.domain().clone(),
            p.carrier.transport(&sigma, &current.value)?,
        );
    }
    for ((_, g), s) in assignment.iter().zip(&fresh) {
        current = p.compose(&current, s, g)?;
    }
    Ok(current)
}

/// The atom pool of a check, with every set indexed by a bitmask.
struct Universe {
    pool: Vec<Label>,
    max: usize,
    sets: Vec<FiniteSet>,
    masks: Vec<u32>,
    operands: Vec<Arc<[Operand]>>,
    bijections: BijectionCache,
}

type BijectionCache = RwLock<HashMap<(u32, u32), Arc<[Bijection]>>>;

impl Universe {
    fn new(bounds: &Bounds, carrier: &Species) -> Universe {
        let pool = bounds.pool_set().as_slice().to_vec();
        assert!(pool.len() < 32, "atom pools are capped at 31 labels");
        let n = 1u32 << pool.len();
        let sets: Vec<FiniteSet> = (0..n)
            .map(|m| {
                FiniteSet::new(
                    (0..pool.len())
                        .filter(|i| m & (1 << i) != 0)
                        .map(|i| pool[i].clone()),
                )
            })
            .collect();
        let max = bounds.max_size;
        let mut masks: Vec<u32> = (0..n).filter(|m| m.count_ones() as usize <= max).collect();
        masks.sort_by_key(|m| (m.count_ones(), sets[*m as usize].clone()));
        let operands = (0..n)
            .map(|m| {
                if m.count_ones() as usize <= max {
                    let set = &sets[m as usize];
                    carrier
                        .eval(set)
                        .iter()
                        .map(|v| Operand::new(set.clone(), v.clone()))
                        .collect()
                } else {
                    Arc::from(Vec::new())
                }
            })
            .collect();
        Universe {
            pool,
            max,
            sets,
            masks,
            operands,
            bijections: RwLock::new(HashMap::new()),
        }
    }

    fn fits(&self, m: u32) -> bool {
        m.count_ones() as usize <= self.max
    }

    fn set(&self, m: u32) -> &FiniteSet {
        &self.sets[m as usize]
    }

    fn ops(&self, m: u32) -> &[Operand] {
        &self.operands[m as usize]
    }

    fn label(&self, bit: u32) -> &Label {
        &self.pool[bit.trailing_zeros() as usize]
    }

    fn bit(&self, label: &Label) -> u32 {
        1 << self
            .pool
            .iter()
            .position(|l| l == label)
            .expect("label in pool")
    }

    fn all(&self) -> u32 {
        (1u32 << self.pool.len()) - 1
    }

    /// Every `(mask, operand)` with a nonempty carrier.
    fn elements(&self) -> Vec<(u32, usize)> {
        self.masks
            .iter()
            .flat_map(|&m| (0..self.ops(m).len()).map(move |i| (m, i)))
            .collect()
    }

    fn same_size(&self, m: u32) -> impl Iterator<Item = u32> + '_ {
        self.masks
            .iter()
            .copied()
            .filter(move |o| o.count_ones() == m.count_ones())
    }

    /// All bijections `set(from) → set(to)`.
    fn bijections(&self, from: u32, to: u32) -> Arc<[Bijection]> {
        if let Some(b) = self.bijections.read().expect("lock").get(&(from, to)) {
            return b.clone();
        }
        let b: Arc<[Bijection]> = all_bijections(self.set(from), self.set(to))
            .expect("equal sizes")
            .into();
        self.bijections
            .write()
            .expect("lock")
            .insert((from, to), b.clone());
        b
    }
}

fn bits(m: u32) -> impl Iterator<Item = u32> {
    (0..32).map(|i| 1u32 << i).filter(move |b| m & b != 0)
}

fn transport_operand(carrier: &Species, sigma: &Bijection, f: &Operand) -> Result<Operand> {
    Ok(Operand::new(
        sigma.domain().clone(),
        carrier.transport(sigma, &f.value)?,
    ))
}

fn value(r: Result<Operand>) -> Result<Structure> {
    r.map(|o| o.value)
}

fn touch_all(report: &mut Report, laws: &[&str]) {
    for law in laws {
        report.touch(law);
    }
}

/// Carrier emptiness on `∅` (and on singletons when `singletons` is set).
fn constant_freeness(carrier: &Species, u: &Universe, singletons: bool, report: &mut Report) {
    let mut sets = vec![FiniteSet::empty()];
    if singletons {
        sets.extend(u.pool.iter().map(|l| FiniteSet::singleton(l.clone())));
    }
    for x in sets {
        let n = carrier.count(&x);
        report.record("constant-free", n == 0, || {
            (
                format!("carrier at {x}"),
                format!("{n} structures"),
                "none".to_string(),
            )
        });
    }
}

const ENTRIES_ONLY_LAWS: [&str; 6] = ["constant-free", "closure", "(A1)", "(EQ)", "(U1)", "(UP)"];

/// The axioms of an entries-only cyclic operad, plus functoriality of the carrier.
pub fn check_entries_only(p: &EntriesOnlyPresentation, bounds: &Bounds) -> Report {
    let u = Universe::new(bounds, &p.carrier);
    let carrier = &p.carrier;
    let mut report = Report::fan_out(
        format!("entries-only axioms of {}", p.name),
        &u.elements(),
        |&(fm, fi), report| {
            let f = &u.ops(fm)[fi];
            for xb in bits(fm) {
                let x = u.label(xb);
                // (U1): id_{x,y} y∘x f = f
                for yb in bits(u.all() & !xb) {
                    let y = u.label(yb);
                    if !u.fits(xb | yb) {
                        continue;
                    }
                    let lhs = p.unit_operand(x, y).and_then(|id| p.compose(&id, y, f, x));
                    report.check_eq("(U1)", value(lhs), Ok(f.value.clone()), || {
                        format!("f = {f}, x = {x}, y = {y}")
                    });
                }
                for &gm in &u.masks {
                    for yb in bits(gm) {
                        if (fm & !xb) & (gm & !yb) != 0 || !u.fits((fm & !xb) | (gm & !yb)) {
                            continue;
                        }
                        let y = u.label(yb);
                        for g in u.ops(gm) {
                            let fg = p.compose(f, x, g, y);
                            let rm = (fm & !xb) | (gm & !yb);
                            let inside =
                                matches!(&fg, Ok(r) if carrier.contains(u.set(rm), &r.value));
                            report.record("closure", inside, || {
                                (
                                    format!("f = {f}, x = {x}, g = {g}, y = {y}"),
                                    format!("{fg:?}"),
                                    format!("an element of {}({})", carrier.name(), u.set(rm)),
                                )
                            });
                            entries_only_a1(p, &u, f, fm, xb, g, gm, yb, &fg, report);
                            entries_only_eq(p, &u, f, fm, xb, g, gm, yb, &fg, report);
                        }
                    }
                }
            }
        },
    );
    touch_all(&mut report, &ENTRIES_ONLY_LAWS);
    constant_freeness(carrier, &u, true, &mut report);
    // (UP) and unit closure
    for &a in u.masks.iter().filter(|m| m.count_ones() == 2) {
        let id = p.unit_on(u.set(a));
        let inside = matches!(&id, Ok(v) if carrier.contains(u.set(a), v));
        report.record("closure", inside, || {
            (
                format!("id on {}", u.set(a)),
                format!("{id:?}"),
                format!("an element of {}", carrier.name()),
            )
        });
        for b in u.same_size(a) {
            for sigma in u.bijections(b, a).iter() {
                let lhs = id.clone().and_then(|v| carrier.transport(sigma, &v));
                report.check_eq("(UP)", lhs, p.unit_on(u.set(b)), || {
                    format!("σ = {sigma:?}")
                });
            }
        }
    }
    report.absorb("species", check_functoriality(carrier, bounds));
    report.subject = format!("entries-only axioms of {}", p.name);
    report
}

impl EntriesOnlyPresentation {
    /// The unit on a two-element set.
    pub fn unit_on(&self, set: &FiniteSet) -> Result<Structure> {
        match set.as_slice() {
            [x, y] => self.unit(x, y),
            _ => Err(Error::precondition(format!(
                "{set} is not a two-element set"
            ))),
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn entries_only_a1(
    p: &EntriesOnlyPresentation,
    u: &Universe,
    f: &Operand,
    fm: u32,
    xb: u32,
    g: &Operand,
    gm: u32,
    yb: u32,
    fg: &Result<Operand>,
    report: &mut Report,
) {
    // (f x∘y g) u∘z h = (f u∘z h) x∘y g
    let (x, y) = (u.label(xb), u.label(yb));
    let wm = (fm & !xb) | (gm & !yb);
    for ub in bits(fm & !xb) {
        let lab_u = u.label(ub);
        for &hm in &u.masks {
            for zb in bits(hm) {
                let hz = hm & !zb;
                let left_ok = (wm & !ub) & hz == 0 && u.fits((wm & !ub) | hz);
                let vm = (fm & !ub) | hz;
                let right_ok = (fm & !ub) & hz == 0 && u.fits(vm) && (vm & !xb) & (gm & !yb) == 0;
                if !left_ok || !right_ok {
                    continue;
                }
                let z = u.label(zb);
                for h in u.ops(hm) {
                    let lhs = fg.clone().and_then(|fg| p.compose(&fg, lab_u, h, z));
                    let rhs = p
                        .compose(f, lab_u, h, z)
                        .and_then(|fh| p.compose(&fh, x, g, y));
                    report.check_eq("(A1)", value(lhs), value(rhs), || {
                        format!("f = {f}, x = {x}, g = {g}, y = {y}, u = {lab_u}, h = {h}, z = {z}")
                    });
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn entries_only_eq(
    p: &EntriesOnlyPresentation,
    u: &Universe,
    f: &Operand,
    fm: u32,
    xb: u32,
    g: &Operand,
    gm: u32,
    yb: u32,
    fg: &Result<Operand>,
    report: &mut Report,
) {
    // f^σ1 ₓ'∘ᵧ' g^σ2 = (f ₓ∘ᵧ g)^σ with σ = σ1|^{X∖x} ∪ σ2|^{Y∖y}
    let carrier = &p.carrier;
    let (x, y) = (u.label(xb), u.label(yb));
    let (rest_f, rest_g) = (u.set(fm & !xb), u.set(gm & !yb));
    for fm2 in u.same_size(fm) {
        for s1 in u.bijections(fm2, fm).iter() {
            let x2 = s1.preimage(x).expect("x in codomain");
            let x2b = u.bit(x2);
            let f2 = transport_operand(carrier, s1, f);
            let r1 = s1.restrict_corestrict(rest_f);
            for gm2 in u.same_size(gm) {
                for s2 in u.bijections(gm2, gm).iter() {
                    let y2 = s2.preimage(y).expect("y in codomain");
                    if (fm2 & !x2b) & (gm2 & !u.bit(y2)) != 0 {
                        continue;
                    }
                    let lhs = f2.clone().and_then(|f2| {
                        let g2 = transport_operand(carrier, s2, g)?;
                        p.compose(&f2, x2, &g2, y2)
                    });
                    let rhs = fg.clone().and_then(|fg| {
                        let sigma = r1
                            .clone()?
                            .disjoint_union(&s2.restrict_corestrict(rest_g)?)?;
                        transport_operand(carrier, &sigma, &fg)
                    });
                    report.check_eq("(EQ)", value(lhs), value(rhs), || {
                        format!("f = {f}, x = {x}, g = {g}, y = {y}, σ1 = {s1:?}, σ2 = {s2:?}")
                    });
                }
            }
        }
    }
}

const ENTRIES_ONLY_DERIVED_LAWS: [&str; 4] = ["(CO)", "(A2)", "(U2)", "(EQ)'"];

/// The laws every entries-only cyclic operad satisfies as a consequence of
/// its axioms: commutativity, sequential associativity, right unitality and
/// the general equivariance law. A failure on a presentation that passes
/// [`check_entries_only`] points at a bug in the checker or the presentation.
pub fn check_entries_only_derived(p: &EntriesOnlyPresentation, bounds: &Bounds) -> Report {
    let u = Universe::new(bounds, &p.carrier);
    let mut report = Report::fan_out(
        format!("derived entries-only laws of {}", p.name),
        &u.elements(),
        |&(fm, fi), report| {
            let f = &u.ops(fm)[fi];
            for xb in bits(fm) {
                let x = u.label(xb);
                // (U2): f x∘y id_{y,x} = f
                for yb in bits(u.all() & !xb) {
                    if !u.fits(xb | yb) {
                        continue;
                    }
                    let y = u.label(yb);
                    let lhs = p.unit_operand(y, x).and_then(|id| p.compose(f, x, &id, y));
                    report.check_eq("(U2)", value(lhs), Ok(f.value.clone()), || {
                        format!("f = {f}, x = {x}, y = {y}")
                    });
                }
                for &gm in &u.masks {
                    for yb in bits(gm) {
                        let rm = (fm & !xb) | (gm & !yb);
                        if (fm & !xb) & (gm & !yb) != 0 || !u.fits(rm) {
                            continue;
                        }
                        let y = u.label(yb);
                        for g in u.ops(gm) {
                            let fg = p.compose(f, x, g, y);
                            report.check_eq(
                                "(CO)",
                                value(fg.clone()),
                                value(p.compose(g, y, f, x)),
                                || format!("f = {f}, x = {x}, g = {g}, y = {y}"),
                            );
                            derived_a2(p, &u, f, fm, xb, g, gm, yb, &fg, report);
                            derived_eq(p, &u, f, fm, xb, g, gm, yb, rm, &fg, report);
                        }
                    }
                }
            }
        },
    );
    touch_all(&mut report, &ENTRIES_ONLY_DERIVED_LAWS);
    report
}

#[allow(clippy::too_many_arguments)]
fn derived_a2(
    p: &EntriesOnlyPresentation,
    u: &Universe,
    f: &Operand,
    fm: u32,
    xb: u32,
    g: &Operand,
    gm: u32,
    yb: u32,
    fg: &Result<Operand>,
    report: &mut Report,
) {
    // (f x∘y g) u∘z h = f x∘y (g u∘z h), with u ∈ Y∖{y}
    let (x, y) = (u.label(xb), u.label(yb));
    let wm = (fm & !xb) | (gm & !yb);
    for ub in bits(gm & !yb) {
        let lab_u = u.label(ub);
        for &hm in &u.masks {
            for zb in bits(hm) {
                let hz = hm & !zb;
                let vm = (gm & !ub) | hz;
                let ok = (wm & !ub) & hz == 0
                    && u.fits((wm & !ub) | hz)
                    && (gm & !ub) & hz == 0
                    && u.fits(vm)
                    && (fm & !xb) & (vm & !yb) == 0;
                if !ok {
                    continue;
                }
                let z = u.label(zb);
                for h in u.ops(hm) {
                    let lhs = fg.clone().and_then(|fg| p.compose(&fg, lab_u, h, z));
                    let rhs = p
                        .compose(g, lab_u, h, z)
                        .and_then(|gh| p.compose(f, x, &gh, y));
                    report.check_eq("(A2)", value(lhs), value(rhs), || {
                        format!("f = {f}, x = {x}, g = {g}, y = {y}, u = {lab_u}, h = {h}, z = {z}")
                    });
                }
            }
        }
    }
}

/// A renaming `τ`, the image of the chosen entry, and `τ` restricted to the
/// other entries together with the transported operand.
type Renamed = (Bijection, Label, Result<(Bijection, Operand)>);

#[allow(clippy::too_many_arguments)]
fn derived_eq(
    p: &EntriesOnlyPresentation,
    u: &Universe,
    f: &Operand,
    fm: u32,
    xb: u32,
    g: &Operand,
    gm: u32,
    yb: u32,
    rm: u32,
    fg: &Result<Operand>,
    report: &mut Report,
) {
    // (f ₓ∘ᵧ g)^σ = (f^τ1 ∘ g^τ2)^τ whenever σ = (τ1| ∪ τ2|) ∘ τ,
    // with the source Z of σ the first |X∖{x} ∪ Y∖{y}| atoms of the pool.
    let carrier = &p.carrier;
    let (x, y) = (u.label(xb), u.label(yb));
    let zm = (1u32 << rm.count_ones()) - 1;
    let Ok(fg) = fg else {
        report.record("(EQ)'", false, || {
            (
                format!("f = {f}, x = {x}, g = {g}, y = {y}"),
                format!("{fg:?}"),
                "a composite".into(),
            )
        });
        return;
    };
    let (rest_f, rest_g) = (u.set(fm & !xb), u.set(gm & !yb));
    let sigmas = u.bijections(zm, rm);
    let lhs: Vec<Result<Structure>> = sigmas
        .iter()
        .map(|sigma| value(transport_operand(carrier, sigma, fg)))
        .collect();
    // Everything but τ is independent of σ, so the composite is formed once
    // per pair (τ1, τ2) and only the final transport runs per σ.
    let renamed = |m: u32, at: &Label, op: &Operand, rest: &FiniteSet| -> Vec<Renamed> {
        let mut out = Vec::new();
        for m2 in u.same_size(m) {
            for t in u.bijections(m2, m).iter() {
                let at2 = t.preimage(at).expect("entry in codomain").clone();
                let moved = t
                    .restrict_corestrict(rest)
                    .and_then(|r| Ok((r, transport_operand(carrier, t, op)?)));
                out.push((t.clone(), at2, moved));
            }
        }
        out
    };
    let fs = renamed(fm, x, f, rest_f);
    let gs = renamed(gm, y, g, rest_g);
    for (t1, x2, f_side) in &fs {
        for (t2, y2, g_side) in &gs {
            let (f_rest, g_rest) = (t1.domain().remove(x2), t2.domain().remove(y2));
            if !f_rest.intersection(&g_rest).is_empty() {
                continue;
            }
            let joint_and_composite = (|| {
                let (r1, f2) = f_side.as_ref().map_err(Clone::clone)?;
                let (r2, g2) = g_side.as_ref().map_err(Clone::clone)?;
                let joint = r1.disjoint_union(r2)?.inverse();
                Ok((joint, p.compose(f2, x2, g2, y2)?))
            })();
            for (sigma, lhs) in sigmas.iter().zip(&lhs) {
                let rhs = joint_and_composite.clone().and_then(|(joint, c)| {
                    let tau = joint.compose(sigma)?;
                    transport_operand(carrier, &tau, &c)
                });
                report.check_eq("(EQ)'", lhs.clone(), value(rhs), || {
                    format!("f = {f}, x = {x}, g = {g}, y = {y}, σ = {sigma:?}, τ1 = {t1:?}, τ2 = {t2:?}")
                });
            }
        }
    }
}

const OPERAD_LAWS: [&str; 7] = ["closure", "[A1]", "[A2]", "[EQ]", "[U1]", "[U2]", "[UP]"];

/// The axioms of a symmetric operad, plus functoriality of the carrier.
pub fn check_operad(p: &OperadPresentation, bounds: &Bounds) -> Report {
    let u = Universe::new(bounds, &p.carrier);
    let carrier = &p.carrier;
    let mut report = Report::fan_out(
        format!("operad axioms of {}", p.name),
        &u.elements(),
        |&(fm, fi), report| {
            let f = &u.ops(fm)[fi];
            // [U1]: id_y ∘_y f = f
            for yb in bits(u.all()) {
                let y = u.label(yb);
                let lhs = p.unit_operand(y).and_then(|id| p.compose(&id, y, f));
                report.check_eq("[U1]", value(lhs), Ok(f.value.clone()), || {
                    format!("f = {f}, y = {y}")
                });
            }
            for xb in bits(fm) {
                let x = u.label(xb);
                // [U2]: f ∘_x id_x = f
                let lhs = p.unit_operand(x).and_then(|id| p.compose(f, x, &id));
                report.check_eq("[U2]", value(lhs), Ok(f.value.clone()), || {
                    format!("f = {f}, x = {x}")
                });
                for &gm in &u.masks {
                    let rm = (fm & !xb) | gm;
                    if (fm & !xb) & gm != 0 || !u.fits(rm) {
                        continue;
                    }
                    for g in u.ops(gm) {
                        let fg = p.compose(f, x, g);
                        let inside = matches!(&fg, Ok(r) if carrier.contains(u.set(rm), &r.value));
                        report.record("closure", inside, || {
                            (
                                format!("f = {f}, x = {x}, g = {g}"),
                                format!("{fg:?}"),
                                format!("an element of {}({})", carrier.name(), u.set(rm)),
                            )
                        });
                        operad_associativity(p, &u, f, fm, xb, g, gm, &fg, report);
                        operad_eq(p, &u, f, fm, xb, g, gm, &fg, report);
                    }
                }
            }
        },
    );
    touch_all(&mut report, &OPERAD_LAWS);
    for xb in bits(u.all()) {
        let x = u.label(xb);
        let id = p.unit(x);
        let inside = matches!(&id, Ok(v) if carrier.contains(u.set(xb), v));
        report.record("closure", inside, || {
            (
                format!("id_{x}"),
                format!("{id:?}"),
                format!("an element of {}", carrier.name()),
            )
        });
        for ub in bits(u.all()) {
            for sigma in u.bijections(ub, xb).iter() {
                let lhs = id.clone().and_then(|v| carrier.transport(sigma, &v));
                report.check_eq("[UP]", lhs, p.unit(u.label(ub)), || {
                    format!("σ = {sigma:?}")
                });
            }
        }
    }
    report.absorb("species", check_functoriality(carrier, bounds));
    report
}

#[allow(clippy::too_many_arguments)]
fn operad_associativity(
    p: &OperadPresentation,
    u: &Universe,
    f: &Operand,
    fm: u32,
    xb: u32,
    g: &Operand,
    gm: u32,
    fg: &Result<Operand>,
    report: &mut Report,
) {
    let x = u.label(xb);
    let wm = (fm & !xb) | gm;
    for &hm in &u.masks {
        // [A1]: (f ∘x g) ∘y h = (f ∘y h) ∘x g, y ∈ X∖{x}
        for yb in bits(fm & !xb) {
            let vm = (fm & !yb) | hm;
            let ok = (wm & !yb) & hm == 0
                && u.fits((wm & !yb) | hm)
                && (fm & !yb) & hm == 0
                && u.fits(vm)
                && (vm & !xb) & gm == 0;
            if !ok {
                continue;
            }
            let y = u.label(yb);
            for h in u.ops(hm) {
                let lhs = fg.clone().and_then(|fg| p.compose(&fg, y, h));
                let rhs = p.compose(f, y, h).and_then(|fh| p.compose(&fh, x, g));
                report.check_eq("[A1]", value(lhs), value(rhs), || {
                    format!("f = {f}, x = {x}, g = {g}, y = {y}, h = {h}")
                });
            }
        }
        // [A2]: (f ∘x g) ∘y h = f ∘x (g ∘y h), y ∈ Y
        for yb in bits(gm) {
            let vm = (gm & !yb) | hm;
            let ok = (wm & !yb) & hm == 0
                && u.fits((wm & !yb) | hm)
                && (gm & !yb) & hm == 0
                && u.fits(vm)
                && (fm & !xb) & vm == 0;
            if !ok {
                continue;
            }
            let y = u.label(yb);
            for h in u.ops(hm) {
                let lhs = fg.clone().and_then(|fg| p.compose(&fg, y, h));
                let rhs = p.compose(g, y, h).and_then(|gh| p.compose(f, x, &gh));
                report.check_eq("[A2]", value(lhs), value(rhs), || {
                    format!("f = {f}, x = {x}, g = {g}, y = {y}, h = {h}")
                });
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn operad_eq(
    p: &OperadPresentation,
    u: &Universe,
    f: &Operand,
    fm: u32,
    xb: u32,
    g: &Operand,
    gm: u32,
    fg: &Result<Operand>,
    report: &mut Report,
) {
    // f^σ1 ∘_{σ1⁻¹(x)} g^σ2 = (f ∘x g)^σ with σ = σ1|^{X∖x} ∪ σ2
    let carrier = &p.carrier;
    let x = u.label(xb);
    let rest_f = u.set(fm & !xb);
    for fm2 in u.same_size(fm) {
        for s1 in u.bijections(fm2, fm).iter() {
            let x2 = s1.preimage(x).expect("x in codomain");
            let x2b = u.bit(x2);
            let f2 = transport_operand(carrier, s1, f);
            let r1 = s1.restrict_corestrict(rest_f);
            for gm2 in u.same_size(gm) {
                if (fm2 & !x2b) & gm2 != 0 {
                    continue;
                }
                for s2 in u.bijections(gm2, gm).iter() {
                    let lhs = f2.clone().and_then(|f2| {
                        let g2 = transport_operand(carrier, s2, g)?;
                        p.compose(&f2, x2, &g2)
                    });
                    let rhs = fg.clone().and_then(|fg| {
                        let sigma = r1.clone()?.disjoint_union(s2)?;
                        transport_operand(carrier, &sigma, &fg)
                    });
                    report.check_eq("[EQ]", value(lhs), value(rhs), || {
                        format!("f = {f}, x = {x}, g = {g}, σ1 = {s1:?}, σ2 = {s2:?}")
                    });
                }
            }
        }
    }
}

const EXCHANGE_LAWS: [&str; 8] = [
    "constant-free",
    "action closure",
    "(DID)",
    "(DIN)",
    "(DEQ)",
    "(DEX)",
    "(DC1)",
    "(DC2)",
];

/// The axioms of an exchangeable-output cyclic operad: the operad axioms of
/// the base and the laws of the actions `D_x`.
pub fn check_exchangeable_output(p: &ExchangeableOutputPresentation, bounds: &Bounds) -> Report {
    let base = &p.base;
    let carrier = &base.carrier;
    let u = Universe::new(bounds, carrier);
    let mut report = Report::fan_out(
        format!("exchangeable-output axioms of {}", p.name()),
        &u.elements(),
        |&(fm, fi), report| {
            let f = &u.ops(fm)[fi];
            for xb in bits(fm) {
                let x = u.label(xb);
                let dx = p.dact(x, f);
                let inside = matches!(&dx, Ok(d) if carrier.contains(&f.set, &d.value));
                report.record("action closure", inside, || {
                    (
                        format!("D_{x}, f = {f}"),
                        format!("{dx:?}"),
                        format!("an element of {}", carrier.name()),
                    )
                });
                // (DIN)
                let lhs = dx.clone().and_then(|d| p.dact(x, &d));
                report.check_eq("(DIN)", value(lhs), Ok(f.value.clone()), || {
                    format!("f = {f}, x = {x}")
                });
                // (DEQ): D_x(f)^σ = D_{σ⁻¹(x)}(f^σ)
                for ym in u.same_size(fm) {
                    for sigma in u.bijections(ym, fm).iter() {
                        let lhs = dx
                            .clone()
                            .and_then(|d| transport_operand(carrier, sigma, &d));
                        let x2 = sigma.preimage(x).expect("x in codomain");
                        let rhs =
                            transport_operand(carrier, sigma, f).and_then(|f2| p.dact(x2, &f2));
                        report.check_eq("(DEQ)", value(lhs), value(rhs), || {
                            format!("f = {f}, x = {x}, σ = {sigma:?}")
                        });
                    }
                }
                // (DEX): D_x(f)^σ = D_x(D_y(f)), σ exchanging x and y
                for yb in bits(fm & !xb) {
                    let y = u.label(yb);
                    let lhs = dx.clone().and_then(|d| {
                        let sigma = Bijection::exchange(&f.set, x, y)?;
                        transport_operand(carrier, &sigma, &d)
                    });
                    let rhs = p.dact(y, f).and_then(|d| p.dact(x, &d));
                    report.check_eq("(DEX)", value(lhs), value(rhs), || {
                        format!("f = {f}, x = {x}, y = {y}")
                    });
                }
                for &gm in &u.masks {
                    let rm = (fm & !xb) | gm;
                    if (fm & !xb) & gm != 0 || !u.fits(rm) {
                        continue;
                    }
                    for g in u.ops(gm) {
                        let fg = base.compose(f, x, g);
                        // (DC1): D_y(f ∘x g) = D_y(f) ∘x g, y ∈ X∖{x}
                        for yb in bits(fm & !xb) {
                            let y = u.label(yb);
                            let lhs = fg.clone().and_then(|fg| p.dact(y, &fg));
                            let rhs = p.dact(y, f).and_then(|d| base.compose(&d, x, g));
                            report.check_eq("(DC1)", value(lhs), value(rhs), || {
                                format!("f = {f}, x = {x}, g = {g}, y = {y}")
                            });
                        }
                        // (DC2): D_y(f ∘x g) = D_y(g)^σ1 ∘v D_x(f)^σ2, y ∈ Y
                        for yb in bits(gm) {
                            let y = u.label(yb);
                            let lhs = fg.clone().and_then(|fg| p.dact(y, &fg));
                            for vb in bits(u.all() & !(gm & !yb)) {
                                let v = u.label(vb);
                                if !u.fits((gm & !yb) | vb) || !u.fits((fm & !xb) | yb) {
                                    continue;
                                }
                                let rhs = (|| {
                                    let s1 = Bijection::renaming(&g.set, y, v)?;
                                    let s2 = Bijection::renaming(&f.set, x, y)?;
                                    let dg = transport_operand(carrier, &s1, &p.dact(y, g)?)?;
                                    let df = transport_operand(carrier, &s2, &dx.clone()?)?;
                                    base.compose(&dg, v, &df)
                                })();
                                report.check_eq("(DC2)", value(lhs.clone()), value(rhs), || {
                                    format!("f = {f}, x = {x}, g = {g}, y = {y}, v = {v}")
                                });
                            }
                        }
                    }
                }
            }
        },
    );
    touch_all(&mut report, &EXCHANGE_LAWS);
    constant_freeness(carrier, &u, false, &mut report);
    for xb in bits(u.all()) {
        let x = u.label(xb);
        let lhs = base.unit_operand(x).and_then(|id| p.dact(x, &id));
        report.check_eq("(DID)", value(lhs), base.unit(x), || format!("x = {x}"));
    }
    let operad = check_operad(base, bounds);
    report.merge(operad);
    report.subject = format!("exchangeable-output axioms of {}", p.name());
    report
}

const EXCHANGE_DERIVED_LAWS: [&str; 5] = ["(DID)'", "(DIN)'", "(DEQ)'", "(DC1)'", "(DCO)"];

/// The consequences of the exchangeable-output axioms for the renamed
/// actions `D_xy`.
pub fn check_exchangeable_output_derived(
    p: &ExchangeableOutputPresentation,
    bounds: &Bounds,
) -> Report {
    let base = &p.base;
    let carrier = &base.carrier;
    let u = Universe::new(bounds, carrier);
    let mut report = Report::fan_out(
        format!("derived exchangeable-output laws of {}", p.name()),
        &u.elements(),
        |&(fm, fi), report| {
            let f = &u.ops(fm)[fi];
            for xb in bits(fm) {
                let x = u.label(xb);
                for yb in bits(u.all() & !(fm & !xb)) {
                    let y = u.label(yb);
                    if !u.fits((fm & !xb) | yb) {
                        continue;
                    }
                    // (DIN)': D_yx(D_xy(f)) = f
                    let dxy = p.dact_renamed(f, x, y);
                    let lhs = dxy.clone().and_then(|d| p.dact_renamed(&d, y, x));
                    report.check_eq("(DIN)'", value(lhs), Ok(f.value.clone()), || {
                        format!("f = {f}, x = {x}, y = {y}")
                    });
                    // (DEQ)': D_yx(f^σ) = D_xy(f)^{σ⁻¹}, σ renaming x to y
                    let sides = (|| {
                        let sigma = Bijection::renaming(&f.set, x, y)?;
                        let lhs = p.dact_renamed(&transport_operand(carrier, &sigma, f)?, y, x)?;
                        let rhs = transport_operand(carrier, &sigma.inverse(), &dxy.clone()?)?;
                        Ok((lhs.value, rhs.value))
                    })();
                    let (lhs, rhs) = match sides {
                        Ok((l, r)) => (Ok(l), Ok(r)),
                        Err(e) => (Err(e), Err(Error::Semantic("not evaluated".into()))),
                    };
                    report.check_eq("(DEQ)'", lhs, rhs, || format!("f = {f}, x = {x}, y = {y}"));
                }
                // (DCO): D_xy(D_yz(f)) = D_xz(f), z ∉ X
                for yb in bits(fm & !xb) {
                    let y = u.label(yb);
                    for zb in bits(u.all() & !fm) {
                        let z = u.label(zb);
                        if !u.fits((fm & !xb) | zb) {
                            continue;
                        }
                        let lhs = p
                            .dact_renamed(f, y, z)
                            .and_then(|d| p.dact_renamed(&d, x, y));
                        let rhs = p.dact_renamed(f, x, z);
                        report.check_eq("(DCO)", value(lhs), value(rhs), || {
                            format!("f = {f}, x = {x}, y = {y}, z = {z}")
                        });
                    }
                }
                // (DC1)': D_yu(f ∘x g) = D_yu(f) ∘x g, y ∈ X∖{x}, u ∉ (X∖{y}) ∪ Y
                for &gm in &u.masks {
                    let rm = (fm & !xb) | gm;
                    if (fm & !xb) & gm != 0 || !u.fits(rm) {
                        continue;
                    }
                    for g in u.ops(gm) {
                        let fg = base.compose(f, x, g);
                        for yb in bits(fm & !xb) {
                            let y = u.label(yb);
                            for ub in bits(u.all() & !((fm & !yb) | gm)) {
                                let lab_u = u.label(ub);
                                if !u.fits((rm & !yb) | ub) || !u.fits((fm & !yb) | ub) {
                                    continue;
                                }
                                let lhs = fg.clone().and_then(|fg| p.dact_renamed(&fg, y, lab_u));
                                let rhs = p
                                    .dact_renamed(f, y, lab_u)
                                    .and_then(|d| base.compose(&d, x, g));
                                report.check_eq("(DC1)'", value(lhs), value(rhs), || {
                                    format!("f = {f}, x = {x}, g = {g}, y = {y}, u = {lab_u}")
                                });
                            }
                        }
                    }
                }
            }
        },
    );
    touch_all(&mut report, &EXCHANGE_DERIVED_LAWS);
    // (DID)': D_xy(id_x) = id_y
    for xb in bits(u.all()) {
        for yb in bits(u.all()) {
            let (x, y) = (u.label(xb), u.label(yb));
            let lhs = base
                .unit_operand(x)
                .and_then(|id| p.dact_renamed(&id, x, y));
            report.check_eq("(DID)'", value(lhs), base.unit(y), || {
                format!("x = {x}, y = {y}")
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::SpeciesImpl;
    use crate::structure::Term;

    /// Cyclic orders as a custom species, kept local so that this module
    /// is tested independently of the model zoo.
    struct Cycles;

    fn rotate(mut labels: Vec<Label>) -> Vec<Label> {
        if let Some(i) = labels
            .iter()
            .enumerate()
            .min_by_key(|(_, l)| *l)
            .map(|(i, _)| i)
        {
            labels.rotate_left(i);
        }
        labels
    }

    fn cycle(labels: Vec<Label>) -> Structure {
        Structure::model(
            "cyc",
            Term::node("cyc", rotate(labels).into_iter().map(Term::Leaf).collect()),
        )
    }

    fn cycle_labels(v: &Structure) -> Vec<Label> {
        v.as_model("cyc").unwrap().leaves()
    }

    impl SpeciesImpl for Cycles {
        fn name(&self) -> String {
            "Cyc".into()
        }
        fn structures(&self, set: &FiniteSet) -> Vec<Structure> {
            if set.len() < 2 {
                return vec![];
            }
            let first = set.as_slice()[0].clone();
            let rest: Vec<Label> = set.as_slice()[1..].to_vec();
            let n = rest.len();
            itertools::Itertools::permutations(rest.into_iter(), n)
                .map(|p| {
                    let mut v = vec![first.clone()];
                    v.extend(p);
                    cycle(v)
                })
                .collect()
        }
        fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure> {
            let labels = cycle_labels(value);
            let moved: Result<Vec<Label>> =
                labels.iter().map(|l| sigma.preimage_or_err(l)).collect();
            Ok(cycle(moved?))
        }
    }

    fn cyclic_orders() -> EntriesOnlyPresentation {
        EntriesOnlyPresentation::new(
            "cyclic orders",
            Species::custom(Cycles),
            |set| Ok(cycle(set.as_slice().to_vec())),
            |f, x, g, y| {
                let mut fl = cycle_labels(&f.value);
                let gl = cycle_labels(&g.value);
                let i = fl.iter().position(|l| l == x).unwrap();
                let j = gl.iter().position(|l| l == y).unwrap();
                fl.rotate_left(i + 1);
                fl.pop();
                let mut out = fl;
                let mut after: Vec<Label> = gl.clone();
                after.rotate_left(j + 1);
                after.pop();
                out.extend(after);
                Ok(cycle(out))
            },
        )
    }

    fn atoms(names: &[&str]) -> FiniteSet {
        FiniteSet::atoms(names.iter().copied()).unwrap()
    }

    #[test]
    fn compose_enforces_disjointness() {
        let p = cyclic_orders();
        let f = Operand::new(
            atoms(&["a", "b", "c"]),
            cycle(atoms(&["a", "b", "c"]).as_slice().to_vec()),
        );
        let g = Operand::new(
            atoms(&["b", "d"]),
            cycle(atoms(&["b", "d"]).as_slice().to_vec()),
        );
        let a = Label::atom("a").unwrap();
        let d = Label::atom("d").unwrap();
        assert!(matches!(
            p.compose(&f, &a, &g, &d),
            Err(Error::Precondition(_))
        ));
        let b = Label::atom("b").unwrap();
        let r = p.compose(&f, &a, &g, &b).unwrap();
        assert_eq!(r.set, atoms(&["b", "c", "d"]));
    }

    #[test]
    fn cyclic_orders_pass_all_laws() {
        let p = cyclic_orders();
        let bounds = Bounds::atoms(4, 4);
        let r = check_entries_only(&p, &bounds);
        assert!(r.passed(), "{r}");
        assert!(r.instances("(A1)") > 0 && r.instances("(EQ)") > 0);
        let d = check_entries_only_derived(&p, &bounds);
        assert!(d.passed(), "{d}");
        assert!(d.instances("(EQ)'") > 0 && d.instances("(A2)") > 0);
    }

    #[test]
    fn swapped_arguments_break_parallel_associativity() {
        let p = cyclic_orders();
        let inner = p.clone();
        // Reverse the orientation of the spliced cycle.
        let broken = p.with_compose(move |f, x, g, y| {
            let r = inner.compose(f, x, g, y)?;
            let mut l = cycle_labels(&r.value);
            l.reverse();
            Ok(cycle(l))
        });
        let r = check_entries_only(&broken, &Bounds::atoms(4, 4));
        assert!(!r.passed());
        assert!(
            r.failures_of("(U1)") > 0 || r.failures_of("(A1)") > 0,
            "{r}"
        );
    }

    #[test]
    fn simultaneous_composition_matches_folded_insertions() {
        // The operad of linear orders with one output: ∂ of cyclic orders.
        let c = cyclic_orders();
        let carrier = c.carrier.derivative();
        let c1 = c.clone();
        let c2 = c.clone();
        let p = OperadPresentation::new(
            "lin",
            carrier,
            move |x| c1.unit(x, &FiniteSet::singleton(x.clone()).star()),
            move |f, x, g| {
                let target = f.set.remove(x).union(&g.set);
                let whole = f.set.with_star();
                let sigma = Bijection::renaming(&whole, &f.set.star(), &target.star())?;
                let f2 = Operand::new(
                    sigma.domain().clone(),
                    c2.carrier.transport(&sigma, &f.value)?,
                );
                let g2 = Operand::new(g.set.with_star(), g.value.clone());
                Ok(c2.compose(&f2, x, &g2, &g.set.star())?.value)
            },
        );
        let bounds = Bounds::atoms(4, 4);
        let r = check_operad(&p, &bounds);
        assert!(r.passed(), "{r}");
        let x = atoms(&["a", "b"]);
        let f = Operand::new(x.clone(), p.carrier.eval(&x)[0].clone());
        let (a, b) = (Label::atom("a").unwrap(), Label::atom("b").unwrap());
        let yb = atoms(&["a", "c"]);
        let g1 = Operand::new(atoms(&["b"]), p.unit(&b).unwrap());
        let g2 = Operand::new(yb.clone(), p.carrier.eval(&yb)[1].clone());
        let one =
            simultaneous_composition(&p, &f, &[(a.clone(), g1.clone()), (b.clone(), g2.clone())])
                .unwrap();
        let two = simultaneous_composition(&p, &f, &[(b, g2), (a, g1)]).unwrap();
        assert_eq!(one, two);
        assert_eq!(one.set, atoms(&["a", "b", "c"]));
    }
}
