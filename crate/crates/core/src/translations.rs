//! Constructive equivalences between the presentations, the descent
//! quotient, and checkers for their round trips.
//!
//! - componential ↔ algebraic, entries-only: round trips are equal.
//! - entries-only ↔ exchangeable-output, componential: round trips are
//!   isomorphic through `φ_C` and `ψ_O`.
//! - algebraic entries-only ↔ algebraic exchangeable-output: the way back
//!   first normalizes `(T, D)` to `(∂S, ex)` with `S = ∫(T, D)`.

use std::sync::Arc;

use crate::algebraic::{
    dx_from_d, to_star, AlgebraicEntriesOnly, AlgebraicExchangeableOutput, AlgebraicOperad,
};
use crate::bounds::Bounds;
use crate::componential::{
    EntriesOnlyPresentation, ExchangeableOutputPresentation, OperadPresentation, Operand,
};
use crate::error::{Error, Result};
use crate::isos::{cardinality_derivative, commutator, exchange, product_derivative, triangle};
use crate::labels::{Bijection, FiniteSet, Label};
use crate::natural::NaturalMap;
use crate::report::Report;
use crate::species::{Species, SpeciesImpl};
use crate::structure::Structure;

type Action = Arc<dyn Fn(&Label, &Operand) -> Result<Operand> + Send + Sync>;

// ------------------------------------------- componential ↔ algebraic (EO)

/// `ρ(f, g) = f ₍*X1₎∘₍*X2₎ g` and `η2({x,y}) = id_{x,y}`.
pub fn eo_componential_to_algebraic(p: &EntriesOnlyPresentation) -> AlgebraicEntriesOnly {
    let (p1, p2) = (p.clone(), p.clone());
    AlgebraicEntriesOnly::new(
        p.name.clone(),
        p.carrier.clone(),
        move |_, v| {
            let (f, g, x1, x2) = v.as_pair()?;
            let f = Operand::new(x1.with_star(), f.clone());
            let g = Operand::new(x2.with_star(), g.clone());
            Ok(p1.compose(&f, &x1.star(), &g, &x2.star())?.value)
        },
        move |x, _| p2.unit_on(x),
    )
}

/// `f ₓ∘ᵧ g = ρ(f^σ1, g^σ2)`, where `σ1`, `σ2` rename `x`, `y` to the stars,
/// and `id_{x,y} = η2({x,y})`.
pub fn eo_algebraic_to_componential(a: &AlgebraicEntriesOnly) -> EntriesOnlyPresentation {
    let (s, rho, eta) = (a.species.clone(), a.rho.clone(), a.eta2.clone());
    EntriesOnlyPresentation::new(
        a.name.clone(),
        a.species.clone(),
        move |x| eta.apply(x, &Structure::Whole(x.clone())),
        move |f, x, g, y| {
            let (fx, gy) = (f.set.remove(x), g.set.remove(y));
            let v = Structure::pair(
                s.transport(&to_star(&f.set, x)?, &f.value)?,
                s.transport(&to_star(&g.set, y)?, &g.value)?,
                fx.clone(),
                gy.clone(),
            );
            rho.apply(&fx.union(&gy), &v)
        },
    )
}

// --------------------------------------- entries-only ↔ exchangeable-output

/// The exchangeable-output operad on `∂C`: `f ∘_x g = f^σ ₓ∘₍*Y₎ g`,
/// `id_x = id_{x,*{x}}` and `D_x` exchanging `x` with the star.
pub fn eo_to_exo(c: &EntriesOnlyPresentation) -> ExchangeableOutputPresentation {
    let (c1, c2, c3) = (c.clone(), c.clone(), c.clone());
    let base = OperadPresentation::new(
        format!("∂{}", c.name),
        c.carrier.derivative(),
        move |x| {
            let single = FiniteSet::singleton(x.clone());
            c1.unit_on(&single.with_star())
        },
        move |f, x, g| {
            let rest = f.set.remove(x).union(&g.set);
            let whole = f.set.with_star();
            let sigma = Bijection::renaming(&whole, &f.set.star(), &rest.star())?;
            let f = Operand::new(
                sigma.domain().clone(),
                c2.carrier.transport(&sigma, &f.value)?,
            );
            let ystar = g.set.star();
            let g = Operand::new(g.set.with_star(), g.value.clone());
            Ok(c2.compose(&f, x, &g, &ystar)?.value)
        },
    );
    ExchangeableOutputPresentation::new(base, move |x, f| {
        let swap = Bijection::exchange(&f.set.with_star(), x, &f.set.star())?;
        c3.carrier.transport(&swap, &f.value)
    })
}

/// `≈`-classes of pairs `(x, f)` with `f ∈ T(X∖{x})`, where
/// `(x, f) ≈ (y, D_yx(f))`. A class is stored through its representative
/// with the minimal root.
struct Quotient {
    name: String,
    base: Species,
    dact: Action,
}

impl Quotient {
    /// `D_yx(f) = D_y(f)` with `y` renamed to `x`.
    fn move_root(&self, f: &Operand, y: &Label, x: &Label) -> Result<Operand> {
        let acted = (self.dact)(y, f)?;
        let sigma = Bijection::renaming(&f.set, y, x)?;
        Ok(Operand::new(
            sigma.domain().clone(),
            self.base.transport(&sigma, &acted.value)?,
        ))
    }

    fn canonical(&self, root: &Label, f: &Operand) -> Result<Structure> {
        let whole = f.set.insert(root.clone());
        let min = whole.as_slice()[0].clone();
        if &min == root {
            Ok(Structure::class(root.clone(), f.value.clone()))
        } else {
            let g = self.move_root(f, &min, root)?;
            Ok(Structure::class(min, g.value))
        }
    }

    fn open(&self, set: &FiniteSet, value: &Structure) -> Result<(Label, Operand)> {
        let (root, rep) = value.as_class()?;
        if !set.contains(root) {
            return Err(Error::malformed(&self.name, set, value));
        }
        Ok((root.clone(), Operand::new(set.remove(root), rep.clone())))
    }

    /// The representative of a class with the given root.
    fn rooted_at(&self, set: &FiniteSet, value: &Structure, root: &Label) -> Result<Operand> {
        let (u, f) = self.open(set, value)?;
        if &u == root {
            Ok(f)
        } else {
            self.move_root(&f, root, &u)
        }
    }
}

impl SpeciesImpl for Quotient {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn structures(&self, set: &FiniteSet) -> Vec<Structure> {
        let Some(min) = set.min() else { return vec![] };
        self.base
            .eval(&set.remove(min))
            .iter()
            .map(|f| Structure::class(min.clone(), f.clone()))
            .collect()
    }

    fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure> {
        let (u, f) = self.open(sigma.codomain(), value)?;
        let restricted = sigma.restrict_corestrict(&f.set)?;
        let moved = Operand::new(
            restricted.domain().clone(),
            self.base.transport(&restricted, &f.value)?,
        );
        self.canonical(&sigma.preimage_or_err(&u)?, &moved)
    }
}

/// A shared handle to a quotient species, for building maps into it.
#[derive(Clone)]
struct QuotientHandle(Arc<Quotient>);

struct Shared(Arc<Quotient>);

impl SpeciesImpl for Shared {
    fn name(&self) -> String {
        self.0.name()
    }
    fn structures(&self, set: &FiniteSet) -> Vec<Structure> {
        self.0.structures(set)
    }
    fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure> {
        self.0.transport(sigma, value)
    }
}

impl QuotientHandle {
    fn new(name: String, base: Species, dact: Action) -> (QuotientHandle, Species) {
        let q = Arc::new(Quotient { name, base, dact });
        (QuotientHandle(q.clone()), Species::custom(Shared(q)))
    }
}

/// `∫(T, D)(X) = Σ_{x∈X} T(X∖{x}) / ≈`, with `D_x` read off `D: ∂T → ∂T`.
pub fn descent_integrate(t: &Species, d: &NaturalMap) -> Species {
    descent_handle(t, d).1
}

fn descent_handle(t: &Species, d: &NaturalMap) -> (QuotientHandle, Species) {
    let (t1, d1) = (t.clone(), d.clone());
    QuotientHandle::new(
        format!("∫({}, D)", t.name()),
        t.clone(),
        Arc::new(move |x, f| dx_from_d(&t1, &d1, x, f)),
    )
}

/// Classes `[(x, f)]` of an exchangeable-output operad, composed by cases on
/// whether the chosen entries are the roots.
pub fn exo_to_eo(o: &ExchangeableOutputPresentation) -> EntriesOnlyPresentation {
    let o1 = o.clone();
    let (q, carrier) = QuotientHandle::new(
        format!("∫{}", o.carrier().name()),
        o.carrier().clone(),
        Arc::new(move |x, f| o1.dact(x, f)),
    );
    let (o2, o3) = (o.clone(), o.clone());
    let (q2, q3) = (q.clone(), q);
    EntriesOnlyPresentation::new(
        format!("∫{}", o.name()),
        carrier,
        move |set| match set.as_slice() {
            [x, y] => {
                let id = o2.base.unit_operand(y)?;
                q2.0.canonical(x, &id)
            }
            _ => Err(Error::precondition(format!(
                "{set} is not a two-element set"
            ))),
        },
        move |f, x, g, y| {
            let q = &q3.0;
            let (u, fu) = q.open(&f.set, &f.value)?;
            let (v, gv) = q.open(&g.set, &g.value)?;
            let g_out = if &v == y {
                gv
            } else {
                q.move_root(&gv, y, &v)?
            };
            if &u == x {
                let z = f
                    .set
                    .remove(x)
                    .as_slice()
                    .first()
                    .cloned()
                    .ok_or_else(|| Error::precondition("composition needs a second entry"))?;
                let fz = q.move_root(&fu, &z, x)?;
                let h = o3.base.compose(&fz, x, &g_out)?;
                q.canonical(&z, &h)
            } else {
                let h = o3.base.compose(&fu, x, &g_out)?;
                q.canonical(&u, &h)
            }
        },
    )
}

/// `φ_C: C_{O_C} → C`, `[(u, f)] ↦ f^κ` where `κ` renames the star to `u`.
pub fn iso_cc(c: &EntriesOnlyPresentation, round_trip: &EntriesOnlyPresentation) -> NaturalMap {
    let s = c.carrier.clone();
    NaturalMap::new(
        "φ_C",
        round_trip.carrier.clone(),
        c.carrier.clone(),
        move |x, v| {
            let (u, f) = v.as_class()?;
            let rest = x.remove(u);
            let kappa = Bijection::renaming(&rest.with_star(), &rest.star(), u)?;
            s.transport(&kappa, f)
        },
    )
}

/// `ψ_O: O → O_{C_O}`, `f ↦ [(*X, f)]`.
pub fn iso_oo(
    o: &ExchangeableOutputPresentation,
    round_trip: &ExchangeableOutputPresentation,
) -> NaturalMap {
    let o1 = o.clone();
    let (q, _) = QuotientHandle::new(
        "ψ".into(),
        o.carrier().clone(),
        Arc::new(move |x, f| o1.dact(x, f)),
    );
    NaturalMap::new(
        "ψ_O",
        o.carrier().clone(),
        round_trip.carrier().clone(),
        move |x, v| {
            q.0.canonical(&x.star(), &Operand::new(x.clone(), v.clone()))
        },
    )
}

// ------------------------------------------------------ round-trip checks

/// Pairs of sets `(X, Y)` from the pool, both nonempty and within bounds.
fn set_pairs(bounds: &Bounds) -> Vec<(FiniteSet, FiniteSet)> {
    let sets = bounds.sets();
    let mut out = Vec::new();
    for x in sets.iter().filter(|s| !s.is_empty()) {
        for y in sets.iter().filter(|s| !s.is_empty()) {
            out.push((x.clone(), y.clone()));
        }
    }
    out
}

/// `p` and `q` have equal carriers, units and composition tables.
pub fn check_same_entries_only(
    p: &EntriesOnlyPresentation,
    q: &EntriesOnlyPresentation,
    bounds: &Bounds,
) -> Report {
    let sets = bounds.sets();
    let mut report = Report::fan_out(format!("{} = {}", p.name, q.name), &sets, |x, report| {
        let (a, b) = (p.carrier.eval(x), q.carrier.eval(x));
        report.record("carrier", a == b, || {
            (
                format!("at {x}"),
                format!("{} structures", a.len()),
                format!("{} structures", b.len()),
            )
        });
        if x.len() == 2 {
            report.check_eq("unit", p.unit_on(x), q.unit_on(x), || format!("at {x}"));
        }
    });
    report.merge(Report::fan_out("", &set_pairs(bounds), |(x, y), report| {
        for f in p.carrier.eval(x).iter() {
            for g in p.carrier.eval(y).iter() {
                let (f, g) = (
                    Operand::new(x.clone(), f.clone()),
                    Operand::new(y.clone(), g.clone()),
                );
                for a in x.iter() {
                    for b in y.iter() {
                        if !x.remove(a).is_disjoint(&y.remove(b)) {
                            continue;
                        }
                        report.check_eq(
                            "composition",
                            p.compose(&f, a, &g, b).map(|r| r.value),
                            q.compose(&f, a, &g, b).map(|r| r.value),
                            || format!("{f} {a}∘{b} {g}"),
                        );
                    }
                }
            }
        }
    }));
    report
}

/// `m: C → C'` is a natural bijection preserving units and compositions.
pub fn check_eo_isomorphism(
    m: &NaturalMap,
    from: &EntriesOnlyPresentation,
    to: &EntriesOnlyPresentation,
    bounds: &Bounds,
) -> Report {
    let mut report = Report::new(format!(
        "{} is an isomorphism {} → {}",
        m.name(),
        from.name,
        to.name
    ));
    report.absorb("natural", m.check_naturality(bounds));
    report.absorb("bijective", m.check_bijective(bounds));
    report.merge(Report::fan_out("", &bounds.sets_of_size(2), |x, report| {
        report.check_eq(
            "unit",
            from.unit_on(x).and_then(|u| m.apply(x, &u)),
            to.unit_on(x),
            || format!("at {x}"),
        );
    }));
    report.merge(Report::fan_out("", &set_pairs(bounds), |(x, y), report| {
        for f in from.carrier.eval(x).iter() {
            for g in from.carrier.eval(y).iter() {
                let (fo, go) = (
                    Operand::new(x.clone(), f.clone()),
                    Operand::new(y.clone(), g.clone()),
                );
                let (Ok(mf), Ok(mg)) = (m.apply(x, f), m.apply(y, g)) else {
                    continue;
                };
                let (mf, mg) = (Operand::new(x.clone(), mf), Operand::new(y.clone(), mg));
                for a in x.iter() {
                    for b in y.iter() {
                        if !x.remove(a).is_disjoint(&y.remove(b)) {
                            continue;
                        }
                        let Ok(r) = from.compose(&fo, a, &go, b) else {
                            continue;
                        };
                        report.check_eq(
                            "composition",
                            m.apply(&r.set, &r.value),
                            to.compose(&mf, a, &mg, b).map(|r| r.value),
                            || format!("{fo} {a}∘{b} {go}"),
                        );
                    }
                }
            }
        }
    }));
    report
}

/// `m: O → O'` is a natural bijection preserving units, compositions and `D_x`.
pub fn check_exo_isomorphism(
    m: &NaturalMap,
    from: &ExchangeableOutputPresentation,
    to: &ExchangeableOutputPresentation,
    bounds: &Bounds,
) -> Report {
    let mut report = Report::new(format!(
        "{} is an isomorphism {} → {}",
        m.name(),
        from.name(),
        to.name()
    ));
    report.absorb("natural", m.check_naturality(bounds));
    report.absorb("bijective", m.check_bijective(bounds));
    report.merge(Report::fan_out("", &bounds.sets(), |x, report| {
        if let [a] = x.as_slice() {
            report.check_eq(
                "unit",
                from.base.unit(a).and_then(|u| m.apply(x, &u)),
                to.base.unit(a),
                || format!("at {x}"),
            );
        }
        for f in from.carrier().eval(x).iter() {
            let fo = Operand::new(x.clone(), f.clone());
            for a in x.iter() {
                report.check_eq(
                    "exchange",
                    from.dact(a, &fo).and_then(|d| m.apply(x, &d.value)),
                    m.apply(x, f)
                        .and_then(|mf| to.dact(a, &Operand::new(x.clone(), mf)))
                        .map(|d| d.value),
                    || format!("D_{a} on {fo}"),
                );
            }
        }
    }));
    report.merge(Report::fan_out("", &set_pairs(bounds), |(x, y), report| {
        for f in from.carrier().eval(x).iter() {
            for g in from.carrier().eval(y).iter() {
                let (fo, go) = (
                    Operand::new(x.clone(), f.clone()),
                    Operand::new(y.clone(), g.clone()),
                );
                let (Ok(mf), Ok(mg)) = (m.apply(x, f), m.apply(y, g)) else {
                    continue;
                };
                let (mf, mg) = (Operand::new(x.clone(), mf), Operand::new(y.clone(), mg));
                for a in x.iter() {
                    let Ok(r) = from.base.compose(&fo, a, &go) else {
                        continue;
                    };
                    report.check_eq(
                        "composition",
                        m.apply(&r.set, &r.value),
                        to.base.compose(&mf, a, &mg).map(|r| r.value),
                        || format!("{fo} ∘{a} {go}"),
                    );
                }
            }
        }
    }));
    report
}

// -------------------------------------- algebraic entries-only ↔ exchangeable

/// `(∂S, ν, η1, ex)` with `ν = ∂ρ∘φ⁻¹∘i_l∘(ex·id)` and `η1 = ∂η2∘ε2⁻¹`.
pub fn alg_eo_to_alg_exo(a: &AlgebraicEntriesOnly) -> AlgebraicExchangeableOutput {
    let s = &a.species;
    let ds = s.derivative();
    let pieces = [
        Species::product(&ds.derivative(), &ds),
        Species::product(&ds, &ds.derivative()),
    ];
    let nu = NaturalMap::product(&exchange(s).forward, &NaturalMap::identity(&ds))
        .then(&NaturalMap::injection(0, &pieces))
        .then(&product_derivative(&ds, &ds).backward)
        .then(&NaturalMap::derivative(&a.rho))
        .renamed("ν");
    let eta1 = cardinality_derivative(2)
        .backward
        .then(&NaturalMap::derivative(&a.eta2))
        .renamed("η1");
    let base = AlgebraicOperad {
        name: format!("∂{}", a.name),
        species: ds,
        nu,
        eta1,
    };
    AlgebraicExchangeableOutput {
        base,
        d: exchange(s).forward.renamed("D"),
    }
}

/// The entries-only operad on `S` from an operad on `∂S` whose `D` is `ex`:
/// `ρ' = [ν∘(ex·id), ν∘(ex·id)∘c]∘φ` on `∂(∂S·∂S)`, read at a set through
/// its minimal element, and `∂η2 = η1∘ε2`.
fn entries_only_from_derived(
    name: String,
    s: &Species,
    nu: &NaturalMap,
    eta1: &NaturalMap,
) -> AlgebraicEntriesOnly {
    let ds = s.derivative();
    let rho1 = NaturalMap::product(&exchange(s).forward, &NaturalMap::identity(&ds)).then(nu);
    let rho2 = commutator(&ds, &ds.derivative()).forward.then(&rho1);
    let rho_derived = product_derivative(&ds, &ds)
        .forward
        .then(&NaturalMap::copair(&[rho1, rho2], &ds));
    let eta_derived = cardinality_derivative(2).forward.then(eta1);
    let (s1, s2) = (s.clone(), s.clone());
    let source = triangle(s, s);
    AlgebraicEntriesOnly::new(
        name,
        s.clone(),
        move |x, v| {
            let pivot = x.min().ok_or_else(|| Error::malformed("∂S·∂S", x, v))?;
            let sigma = to_star(x, pivot)?;
            let moved = source.transport(&sigma, v)?;
            let out = rho_derived.apply(&x.remove(pivot), &moved)?;
            s1.transport(&sigma.inverse(), &out)
        },
        move |x, v| {
            let pivot = x.min().ok_or_else(|| Error::malformed("E2", x, v))?;
            let sigma = to_star(x, pivot)?;
            let moved = Species::cardinality(2).transport(&sigma, v)?;
            let out = eta_derived.apply(&x.remove(pivot), &moved)?;
            s2.transport(&sigma.inverse(), &out)
        },
    )
}

/// The way back when the species is literally `∂S` and `D = ex`.
pub fn alg_exo_to_alg_eo_direct(
    a: &AlgebraicExchangeableOutput,
    s: &Species,
) -> AlgebraicEntriesOnly {
    entries_only_from_derived(format!("∫{}", a.base.name), s, &a.base.nu, &a.base.eta1)
}

/// The descent normalization of `(T, D)`: the species `S = ∫(T, D)` with
/// the isomorphism `ψ: T → ∂S` and its inverse.
pub struct Normalization {
    pub species: Species,
    pub psi: NaturalMap,
    pub psi_inverse: NaturalMap,
}

pub fn normalize(t: &Species, d: &NaturalMap) -> Normalization {
    let (q, s) = descent_handle(t, d);
    let q2 = q.clone();
    let psi = NaturalMap::new("ψ", t.clone(), s.derivative(), move |x, v| {
        q.0.canonical(&x.star(), &Operand::new(x.clone(), v.clone()))
    });
    let psi_inverse = NaturalMap::new("ψ⁻¹", s.derivative(), t.clone(), move |x, v| {
        Ok(q2.0.rooted_at(&x.with_star(), v, &x.star())?.value)
    });
    Normalization {
        species: s,
        psi,
        psi_inverse,
    }
}

/// The way back in general: normalize to `(∂S, ex)` with `S = ∫(T, D)` and
/// transfer `ν`, `η1` along `ψ`.
pub fn alg_exo_to_alg_eo(a: &AlgebraicExchangeableOutput) -> (AlgebraicEntriesOnly, Normalization) {
    let n = normalize(a.species(), &a.d);
    let nu = NaturalMap::product(&NaturalMap::derivative(&n.psi_inverse), &n.psi_inverse)
        .then(&a.base.nu)
        .then(&n.psi);
    let eta1 = a.base.eta1.then(&n.psi);
    (
        entries_only_from_derived(format!("∫{}", a.base.name), &n.species, &nu, &eta1),
        n,
    )
}

/// `φ: ∫(∂S, ex) → S`, `[(u, f)] ↦ f` with the star renamed to `u`.
pub fn descent_counit(s: &Species, integrated: &Species) -> NaturalMap {
    let s1 = s.clone();
    NaturalMap::new("φ", integrated.clone(), s.clone(), move |x, v| {
        let (u, f) = v.as_class()?;
        let rest = x.remove(u);
        let kappa = Bijection::renaming(&rest.with_star(), &rest.star(), u)?;
        s1.transport(&kappa, f)
    })
}

/// `m∘ρ' = ρ∘(∂m·∂m)` and `m∘η2' = η2` for `m: S' → S`.
pub fn check_alg_eo_morphism(
    m: &NaturalMap,
    from: &AlgebraicEntriesOnly,
    to: &AlgebraicEntriesOnly,
    bounds: &Bounds,
) -> Report {
    let mut report = Report::new(format!("{} carries {} to {}", m.name(), from.name, to.name));
    report.absorb("natural", m.check_naturality(bounds));
    report.absorb("bijective", m.check_bijective(bounds));
    let dm = NaturalMap::derivative(m);
    let lhs = from.rho.then(m);
    let rhs = NaturalMap::product(&dm, &dm).then(&to.rho);
    report.merge(lhs.check_equal(&rhs, "ρ", bounds));
    report.merge(from.eta2.then(m).check_equal(&to.eta2, "η2", bounds));
    report
}

/// `m∘ν' = ν∘(∂m·m)`, `m∘η1' = η1` and `∂m∘D' = D∘∂m` for `m: T' → T`.
pub fn check_alg_exo_morphism(
    m: &NaturalMap,
    from: &AlgebraicExchangeableOutput,
    to: &AlgebraicExchangeableOutput,
    bounds: &Bounds,
) -> Report {
    let mut report = Report::new(format!(
        "{} carries {} to {}",
        m.name(),
        from.base.name,
        to.base.name
    ));
    report.absorb("natural", m.check_naturality(bounds));
    report.absorb("bijective", m.check_bijective(bounds));
    let dm = NaturalMap::derivative(m);
    let lhs = from.base.nu.then(m);
    let rhs = NaturalMap::product(&dm, m).then(&to.base.nu);
    report.merge(lhs.check_equal(&rhs, "ν", bounds));
    report.merge(
        from.base
            .eta1
            .then(m)
            .check_equal(&to.base.eta1, "η1", bounds),
    );
    report.merge(from.d.then(&dm).check_equal(&dm.then(&to.d), "D", bounds));
    report
}

/// Both sides evaluate to the same structure on every input.
pub fn check_same_map(lhs: &NaturalMap, rhs: &NaturalMap, law: &str, bounds: &Bounds) -> Report {
    lhs.check_equal(rhs, law, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{check_algebraic_entries_only, check_d_axioms};
    use crate::componential::{
        check_entries_only, check_entries_only_derived, check_exchangeable_output,
        check_exchangeable_output_derived,
    };
    use crate::labels::atom_pool;
    use crate::zoo::{Signature, ZooModel};

    fn small() -> Bounds {
        Bounds::atoms(3, 3)
    }

    fn models() -> Vec<ZooModel> {
        vec![
            ZooModel::Comm,
            ZooModel::CyclicOrders,
            ZooModel::FreeCyclic(Signature::ternary(5)),
        ]
    }

    #[test]
    fn componential_algebraic_round_trip_is_exact() {
        for model in models() {
            let p = model.presentation().unwrap();
            let a = eo_componential_to_algebraic(&p);
            let r = check_algebraic_entries_only(&a, &small(), true);
            assert!(r.passed(), "{r}");
            let back = eo_algebraic_to_componential(&a);
            let r = check_same_entries_only(&p, &back, &Bounds::atoms(4, 4));
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn entries_only_to_exchangeable_output_and_back() {
        for model in models() {
            let c = model.presentation().unwrap();
            let o = eo_to_exo(&c);
            let r = check_exchangeable_output(&o, &small());
            assert!(r.passed(), "{r}");
            let r = check_exchangeable_output_derived(&o, &small());
            assert!(r.passed(), "{r}");
            let cc = exo_to_eo(&o);
            let r = check_entries_only(&cc, &small());
            assert!(r.passed(), "{r}");
            let r = check_eo_isomorphism(&iso_cc(&c, &cc), &cc, &c, &small());
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn rooted_views_round_trip_through_classes() {
        for model in models() {
            let o = model.rooted_view().unwrap().presentation;
            let c = exo_to_eo(&o);
            let r = check_entries_only(&c, &small());
            assert!(r.passed(), "{r}");
            let r = check_entries_only_derived(&c, &small());
            assert!(r.passed(), "{r}");
            let oo = eo_to_exo(&c);
            let r = check_exo_isomorphism(&iso_oo(&o, &oo), &o, &oo, &small());
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn descent_of_e2_has_one_class_on_a_pair() {
        let e2 = Species::cardinality(2);
        let s = descent_integrate(&e2.derivative(), &exchange(&e2).forward);
        let x = FiniteSet::new(atom_pool(2));
        assert_eq!(s.count(&x), 1);
        assert_eq!(s.count(&FiniteSet::new(atom_pool(1))), 0);
    }

    #[test]
    fn algebraic_equivalence_recovers_the_structure() {
        for model in models() {
            let a = eo_componential_to_algebraic(&model.presentation().unwrap());
            let exo = alg_eo_to_alg_exo(&a);
            let r = check_d_axioms(&exo, &small());
            assert!(r.passed(), "{r}");
            let direct = alg_exo_to_alg_eo_direct(&exo, &a.species);
            let r = check_same_map(&direct.rho, &a.rho, "ρ", &small());
            assert!(r.passed(), "{r}");
            let r = check_same_map(&direct.eta2, &a.eta2, "η2", &small());
            assert!(r.passed(), "{r}");
            let (normal, n) = alg_exo_to_alg_eo(&exo);
            let r = check_algebraic_entries_only(&normal, &small(), false);
            assert!(r.passed(), "{r}");
            let phi = descent_counit(&a.species, &n.species);
            let r = check_alg_eo_morphism(&phi, &normal, &a, &small());
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn algebraic_exchangeable_output_round_trip() {
        for model in models() {
            let o = model.rooted_view().unwrap().presentation;
            let b = AlgebraicExchangeableOutput::from_componential(&o);
            let r = check_d_axioms(&b, &small());
            assert!(r.passed(), "{r}");
            let (eo, n) = alg_exo_to_alg_eo(&b);
            let r = check_algebraic_entries_only(&eo, &small(), false);
            assert!(r.passed(), "{r}");
            let back = alg_eo_to_alg_exo(&eo);
            let r = check_alg_exo_morphism(&n.psi, &b, &back, &small());
            assert!(r.passed(), "{r}");
        }
    }
}
