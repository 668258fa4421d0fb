//! Algebraic presentations: operads `(S, ν, η1)`, entries-only cyclic operads
//! `(S, ρ, η2)` and exchangeable-output cyclic operads `(S, ν, η1, D)`, given
//! by natural maps between species, with their law checkers.
//!
//! Multi-summand maps are assembled summand by summand. Each law is checked
//! pointwise on every structure of its source species over the bounds.

use crate::bounds::Bounds;
use crate::componential::{ExchangeableOutputPresentation, OperadPresentation, Operand};
use crate::error::{Error, Result};
use crate::isos::{
    cardinality_derivative, commutator, exchange, forget_point, pre_lie, pre_lie_constituents,
    pre_lie_left_unitor, pre_lie_right_unit, product_derivative, triangle, triangle_constituents,
    triangle_iso_unfolded, triangle_left_unitor, triangle_right_unitor,
};
use crate::labels::{Bijection, FiniteSet, Label};
use crate::natural::NaturalMap;
use crate::report::Report;
use crate::species::Species;
use crate::structure::Structure;

/// `σ: (X∖{x}) ∪ {*(X∖x)} → X`, renaming `x` to the star.
pub(crate) fn to_star(set: &FiniteSet, x: &Label) -> Result<Bijection> {
    Bijection::renaming(set, x, &set.remove(x).star())
}

fn equal(lhs: &NaturalMap, rhs: &NaturalMap, law: &str, bounds: &Bounds, report: &mut Report) {
    report.merge(lhs.check_equal(rhs, law, bounds));
}

fn natural(map: &NaturalMap, law: &str, bounds: &Bounds, report: &mut Report) {
    report.absorb(law, map.check_naturality(bounds));
}

fn empty_below(species: &Species, size: usize, bounds: &Bounds, report: &mut Report) {
    for x in bounds.sets().iter().filter(|x| x.len() < size) {
        let n = species.count(x);
        report.record("constant-free", n == 0, || {
            (
                format!("{} at {x}", species.name()),
                format!("{n} structures"),
                "none".into(),
            )
        });
    }
}

/// The pipeline `P_i → ∂S` that injects into `∂∂S·T + ∂S·∂T`, folds with
/// `φ⁻¹` and applies `∂m` for `m: ∂S·T → S`.
fn folded(m: &NaturalMap, s: &Species, t: &Species, index: usize) -> NaturalMap {
    let ds = s.derivative();
    let pieces = [
        Species::product(&ds.derivative(), t),
        Species::product(&ds, &t.derivative()),
    ];
    NaturalMap::injection(index, &pieces)
        .then(&product_derivative(&ds, t).backward)
        .then(&NaturalMap::derivative(m))
}

// ---------------------------------------------------------------- operads

/// An operad `(S, ν: ∂S·S → S, η1: E_1 → S)`.
#[derive(Clone, Debug)]
pub struct AlgebraicOperad {
    pub name: String,
    pub species: Species,
    pub nu: NaturalMap,
    pub eta1: NaturalMap,
}

impl AlgebraicOperad {
    pub fn new(
        name: impl Into<String>,
        species: Species,
        nu: impl Fn(&FiniteSet, &Structure) -> Result<Structure> + Send + Sync + 'static,
        eta1: impl Fn(&FiniteSet, &Structure) -> Result<Structure> + Send + Sync + 'static,
    ) -> AlgebraicOperad {
        let nu = NaturalMap::new("ν", pre_lie(&species, &species), species.clone(), nu);
        let eta1 = NaturalMap::new("η1", Species::cardinality(1), species.clone(), eta1);
        AlgebraicOperad {
            name: name.into(),
            species,
            nu,
            eta1,
        }
    }

    /// `ν(f, g) = f ∘_{*X1} g` and `η1({x}) = id_x`.
    pub fn from_componential(p: &OperadPresentation) -> AlgebraicOperad {
        let (p1, p2) = (p.clone(), p.clone());
        AlgebraicOperad::new(
            p.name.clone(),
            p.carrier.clone(),
            move |_, v| {
                let (f, g, x1, x2) = v.as_pair()?;
                let f = Operand::new(x1.with_star(), f.clone());
                let g = Operand::new(x2.clone(), g.clone());
                Ok(p1.compose(&f, &x1.star(), &g)?.value)
            },
            move |x, _| match x.as_slice() {
                [a] => p2.unit(a),
                _ => Err(Error::malformed("E1", x, "a unit")),
            },
        )
    }

    /// `f ∘_x g = ν(f^σ, g)` where `σ` renames `x` to the star.
    pub fn to_componential(&self) -> OperadPresentation {
        let (s, nu, eta) = (self.species.clone(), self.nu.clone(), self.eta1.clone());
        OperadPresentation::new(
            self.name.clone(),
            self.species.clone(),
            move |x| {
                let single = FiniteSet::singleton(x.clone());
                eta.apply(&single, &Structure::Whole(single.clone()))
            },
            move |f, x, g| {
                let sigma = to_star(&f.set, x)?;
                let rest = f.set.remove(x);
                let v = Structure::pair(
                    s.transport(&sigma, &f.value)?,
                    g.value.clone(),
                    rest.clone(),
                    g.set.clone(),
                );
                nu.apply(&rest.union(&g.set), &v)
            },
        )
    }

    /// `ν11`, `ν12`, `ν13` on `(∂∂S·S)·S`, `(∂S·∂S)·S` and `∂S·(∂S·S)`.
    pub fn nu_pipelines(&self) -> [NaturalMap; 3] {
        let s = &self.species;
        let ds = s.derivative();
        let id = NaturalMap::identity(s);
        let head = |i| NaturalMap::product(&folded(&self.nu, s, s, i), &id).then(&self.nu);
        [
            head(0).renamed("ν11"),
            head(1).renamed("ν12"),
            NaturalMap::product(&NaturalMap::identity(&ds), &self.nu)
                .then(&self.nu)
                .renamed("ν13"),
        ]
    }

    /// `ν3: ∂∂S·S → ∂S` and `ν4: ∂S·∂S → ∂S`.
    pub fn nu3_nu4(&self) -> (NaturalMap, NaturalMap) {
        let s = &self.species;
        (
            folded(&self.nu, s, s, 0).renamed("ν3"),
            folded(&self.nu, s, s, 1).renamed("ν4"),
        )
    }
}

/// Associativity through the pre-Lie isomorphism and the unit triangles.
///
/// With `full`, `ν12∘β3 = ν13` is checked as well; the first two summands
/// already imply associativity.
pub fn check_oa(a: &AlgebraicOperad, bounds: &Bounds, full: bool) -> Report {
    let s = &a.species;
    let mut report = Report::new(format!("algebraic operad {}", a.name));
    natural(&a.nu, "ν", bounds, &mut report);
    natural(&a.eta1, "η1", bounds, &mut report);
    let [n11, n12, n13] = a.nu_pipelines();
    let [b1, b2, b3] = pre_lie_constituents(s, s, s);
    equal(
        &b1.forward.then(&n11),
        &n11,
        "[OA1] ν21∘β1 = ν11",
        bounds,
        &mut report,
    );
    equal(
        &b2.forward.then(&n13),
        &n12,
        "[OA1] ν22∘β2 = ν12",
        bounds,
        &mut report,
    );
    if full {
        equal(
            &b3.forward.then(&n12),
            &n13,
            "[OA1] ν23∘β3 = ν13",
            bounds,
            &mut report,
        );
    }
    let left =
        NaturalMap::product(&NaturalMap::derivative(&a.eta1), &NaturalMap::identity(s)).then(&a.nu);
    equal(
        &left,
        &pre_lie_left_unitor(s).forward,
        "[OA2] left",
        bounds,
        &mut report,
    );
    let right = NaturalMap::product(&NaturalMap::identity(&s.derivative()), &a.eta1).then(&a.nu);
    equal(
        &right,
        &pre_lie_right_unit(s),
        "[OA2] right",
        bounds,
        &mut report,
    );
    report
}

// ---------------------------------------------------------- entries-only

/// A constant-free cyclic operad `(S, ρ: ∂S·∂S → S, η2: E_2 → S)`.
#[derive(Clone, Debug)]
pub struct AlgebraicEntriesOnly {
    pub name: String,
    pub species: Species,
    pub rho: NaturalMap,
    pub eta2: NaturalMap,
}

impl AlgebraicEntriesOnly {
    pub fn new(
        name: impl Into<String>,
        species: Species,
        rho: impl Fn(&FiniteSet, &Structure) -> Result<Structure> + Send + Sync + 'static,
        eta2: impl Fn(&FiniteSet, &Structure) -> Result<Structure> + Send + Sync + 'static,
    ) -> AlgebraicEntriesOnly {
        let rho = NaturalMap::new("ρ", triangle(&species, &species), species.clone(), rho);
        let eta2 = NaturalMap::new("η2", Species::cardinality(2), species.clone(), eta2);
        AlgebraicEntriesOnly {
            name: name.into(),
            species,
            rho,
            eta2,
        }
    }

    pub fn with_rho(&self, rho: NaturalMap) -> AlgebraicEntriesOnly {
        AlgebraicEntriesOnly {
            rho,
            ..self.clone()
        }
    }

    pub fn with_eta2(&self, eta2: NaturalMap) -> AlgebraicEntriesOnly {
        AlgebraicEntriesOnly {
            eta2,
            ..self.clone()
        }
    }

    /// `ρ11..ρ14` on `(∂∂S·∂S)·∂S`, `(∂S·∂∂S)·∂S`, `∂S·(∂∂S·∂S)` and `∂S·(∂S·∂∂S)`.
    pub fn rho_pipelines(&self) -> [NaturalMap; 4] {
        let s = &self.species;
        let ds = s.derivative();
        let id = NaturalMap::identity(&ds);
        let inner = |i| folded(&self.rho, s, &ds, i);
        [
            NaturalMap::product(&inner(0), &id)
                .then(&self.rho)
                .renamed("ρ11"),
            NaturalMap::product(&inner(1), &id)
                .then(&self.rho)
                .renamed("ρ12"),
            NaturalMap::product(&id, &inner(0))
                .then(&self.rho)
                .renamed("ρ13"),
            NaturalMap::product(&id, &inner(1))
                .then(&self.rho)
                .renamed("ρ14"),
        ]
    }
}

/// `ρ1` and `ρ2` on the six-summand unfoldings of the source and target of `γ`.
pub fn build_rho1_rho2(a: &AlgebraicEntriesOnly) -> (NaturalMap, NaturalMap) {
    let [r11, r12, r13, r14] = a.rho_pipelines();
    let rho1 = [&r11, &r12, &r13, &r14, &r11, &r12].map(|m| m.clone());
    // ρ2 on the targets of γ1..γ6, in that order.
    let rho2 = [&r11, &r13, &r13, &r14, &r14, &r12].map(|m| m.clone());
    let s = &a.species;
    (
        NaturalMap::copair(&rho1, s).renamed("ρ1"),
        NaturalMap::copair(&rho2, s).renamed("ρ2"),
    )
}

/// Associativity: `ρ21∘γ1 = ρ11`, which implies the whole of `ρ2∘γ = ρ1`;
/// with `full`, every one of the six summands is checked directly.
pub fn check_ca1(a: &AlgebraicEntriesOnly, bounds: &Bounds, full: bool) -> Report {
    let s = &a.species;
    let mut report = Report::new(format!("(CA1) for {}", a.name));
    let [r11, ..] = a.rho_pipelines();
    let gammas = triangle_constituents(s, s, s);
    equal(
        &gammas[0].forward.then(&r11),
        &r11,
        "(CA1) ρ21∘γ1 = ρ11",
        bounds,
        &mut report,
    );
    if full {
        let (rho1, rho2) = build_rho1_rho2(a);
        let gamma = triangle_iso_unfolded(s, s, s);
        equal(
            &gamma.forward.then(&rho2),
            &rho1,
            "(CA1) ρ2∘γ = ρ1",
            bounds,
            &mut report,
        );
    }
    report
}

/// The left unit square, and the right unit square it implies.
pub fn check_ca2(a: &AlgebraicEntriesOnly, bounds: &Bounds) -> Report {
    let s = &a.species;
    let ds = s.derivative();
    let mut report = Report::new(format!("(CA2) for {}", a.name));
    let deta = NaturalMap::derivative(&a.eta2);
    let left = NaturalMap::product(&deta, &NaturalMap::identity(&ds)).then(&a.rho);
    let lambda = triangle_left_unitor(s).forward.then(&forget_point(s));
    equal(&left, &lambda, "(CA2)", bounds, &mut report);
    let right = NaturalMap::product(&NaturalMap::identity(&ds), &deta).then(&a.rho);
    let kappa = triangle_right_unitor(s).forward.then(&forget_point(s));
    equal(&right, &kappa, "right unit square", bounds, &mut report);
    report
}

/// `ρ∘c = ρ`.
pub fn check_rho_commutative(a: &AlgebraicEntriesOnly, bounds: &Bounds) -> Report {
    let ds = a.species.derivative();
    let mut report = Report::new(format!("commutativity of ρ for {}", a.name));
    equal(
        &commutator(&ds, &ds).forward.then(&a.rho),
        &a.rho,
        "ρ∘c = ρ",
        bounds,
        &mut report,
    );
    report
}

/// Every law of an algebraic entries-only cyclic operad.
pub fn check_algebraic_entries_only(
    a: &AlgebraicEntriesOnly,
    bounds: &Bounds,
    full_ca1: bool,
) -> Report {
    let mut report = Report::new(format!("algebraic entries-only cyclic operad {}", a.name));
    empty_below(&a.species, 2, bounds, &mut report);
    natural(&a.rho, "ρ", bounds, &mut report);
    natural(&a.eta2, "η2", bounds, &mut report);
    report.merge(check_ca1(a, bounds, full_ca1));
    report.merge(check_ca2(a, bounds));
    report.merge(check_rho_commutative(a, bounds));
    report
}

// ---------------------------------------------------- exchangeable-output

/// An exchangeable-output cyclic operad `(S, ν, η1, D: ∂S → ∂S)`.
#[derive(Clone, Debug)]
pub struct AlgebraicExchangeableOutput {
    pub base: AlgebraicOperad,
    pub d: NaturalMap,
}

impl AlgebraicExchangeableOutput {
    pub fn new(
        base: AlgebraicOperad,
        d: impl Fn(&FiniteSet, &Structure) -> Result<Structure> + Send + Sync + 'static,
    ) -> AlgebraicExchangeableOutput {
        let ds = base.species.derivative();
        let d = NaturalMap::new("D", ds.clone(), ds, d);
        AlgebraicExchangeableOutput { base, d }
    }

    pub fn species(&self) -> &Species {
        &self.base.species
    }

    /// `D_X = D_{*X}`.
    pub fn from_componential(p: &ExchangeableOutputPresentation) -> AlgebraicExchangeableOutput {
        let base = AlgebraicOperad::from_componential(&p.base);
        let p1 = p.clone();
        AlgebraicExchangeableOutput::new(base, move |x, v| {
            Ok(p1
                .dact(&x.star(), &Operand::new(x.with_star(), v.clone()))?
                .value)
        })
    }

    /// `D_x = S(σ⁻¹) ∘ D_{X∖x} ∘ S(σ)`, with `σ` renaming `x` to the star.
    pub fn dx(&self, x: &Label, f: &Operand) -> Result<Operand> {
        dx_from_d(self.species(), &self.d, x, f)
    }

    pub fn to_componential(&self) -> ExchangeableOutputPresentation {
        let (s, d) = (self.species().clone(), self.d.clone());
        ExchangeableOutputPresentation::new(self.base.to_componential(), move |x, f| {
            Ok(dx_from_d(&s, &d, x, f)?.value)
        })
    }

    pub fn with_d(&self, d: NaturalMap) -> AlgebraicExchangeableOutput {
        AlgebraicExchangeableOutput { d, ..self.clone() }
    }
}

/// The componential action `D_x` read off an algebraic `D`.
pub fn dx_from_d(s: &Species, d: &NaturalMap, x: &Label, f: &Operand) -> Result<Operand> {
    if !f.set.contains(x) {
        return Err(Error::NotAnElement {
            label: x.to_string(),
            set: f.set.to_string(),
        });
    }
    let sigma = to_star(&f.set, x)?;
    let moved = s.transport(&sigma, &f.value)?;
    let acted = d.apply(&f.set.remove(x), &moved)?;
    Ok(Operand::new(
        f.set.clone(),
        s.transport(&sigma.inverse(), &acted)?,
    ))
}

/// `(D0)`–`(D4)`, the variant of `(D3)` with `∂D∘ex∘∂D`, and the operad laws.
pub fn check_d_axioms(a: &AlgebraicExchangeableOutput, bounds: &Bounds) -> Report {
    let s = a.species();
    let ds = s.derivative();
    let d = &a.d;
    let dd = NaturalMap::derivative(d);
    let ex = exchange(s).forward;
    let mut report = Report::new(format!(
        "algebraic exchangeable-output cyclic operad {}",
        a.base.name
    ));
    report.merge(check_oa(&a.base, bounds, true));
    natural(d, "D", bounds, &mut report);
    empty_below(s, 1, bounds, &mut report);

    // η^{∂S}: E_0 ≅ ∂E_1 → ∂S
    let unit = cardinality_derivative(1)
        .backward
        .then(&NaturalMap::derivative(&a.base.eta1));
    equal(&unit.then(d), &unit, "(D0)", bounds, &mut report);
    equal(
        &d.then(d),
        &NaturalMap::identity(&ds),
        "(D1)",
        bounds,
        &mut report,
    );
    let turn = ex.then(&dd).renamed("∂D∘ex");
    let cube = NaturalMap::chain(&[turn.clone(), turn.clone(), turn.clone()]);
    equal(
        &cube,
        &NaturalMap::identity(&ds.derivative()),
        "(D2)",
        bounds,
        &mut report,
    );

    let (nu3, nu4) = a.base.nu3_nu4();
    let id = NaturalMap::identity(s);
    let twist = NaturalMap::chain(&[ex.clone(), dd.clone(), ex.clone()]);
    let lhs = NaturalMap::product(&twist, &id).then(&nu3);
    equal(&lhs, &nu3.then(d), "(D3)", bounds, &mut report);
    let twist = NaturalMap::chain(&[dd.clone(), ex.clone(), dd.clone()]);
    let lhs = NaturalMap::product(&twist, &id).then(&nu3);
    equal(&lhs, &nu3.then(d), "(D3) variant", bounds, &mut report);
    let lhs = NaturalMap::product(d, d)
        .then(&commutator(&ds, &ds).forward)
        .then(&nu4);
    equal(&lhs, &nu4.then(d), "(D4)", bounds, &mut report);
    report
}
