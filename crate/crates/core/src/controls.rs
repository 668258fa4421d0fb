//! Single-entry corruptions of the zoo models, one per axiom family, each
//! paired with the law that must catch it.

use crate::algebraic::{
    check_algebraic_entries_only, check_ca1, check_ca2, check_d_axioms, check_oa,
    AlgebraicEntriesOnly, AlgebraicExchangeableOutput,
};
use crate::bounds::Bounds;
use crate::componential::{
    check_entries_only, check_exchangeable_output, check_operad, EntriesOnlyPresentation,
    ExchangeableOutputPresentation, Operand,
};
use crate::error::Result;
use crate::labels::{FiniteSet, Label};
use crate::natural::NaturalMap;
use crate::report::Report;
use crate::structure::{Structure, Term};
use crate::translations::{alg_eo_to_alg_exo, eo_componential_to_algebraic};
use crate::zoo::ZooModel;

/// A corrupted model and the law whose checker must reject it.
pub struct NegativeControl {
    pub name: &'static str,
    pub family: &'static str,
    /// The law that must record at least one failure.
    pub law: &'static str,
    build: fn() -> Report,
}

impl NegativeControl {
    /// Runs the checker on the corrupted model.
    pub fn run(&self) -> Report {
        (self.build)()
    }

    /// Whether `report` rejects the corruption through the targeted law and
    /// carries a witness for it.
    pub fn detected(&self, report: &Report) -> bool {
        report.failures_of(self.law) > 0 && report.violations().any(|v| v.law == self.law)
    }
}

fn l(name: &str) -> Label {
    Label::atom(name).expect("atom")
}

fn set(names: &[&str]) -> FiniteSet {
    FiniteSet::atoms(names.iter().copied()).expect("atoms")
}

fn cycle(names: &[&str]) -> Structure {
    Structure::model(
        "cyc",
        Term::node("cyc", names.iter().map(|n| Term::Leaf(l(n))).collect()),
    )
}

fn linear(names: &[&str]) -> Structure {
    Structure::model(
        "lin",
        Term::node("lin", names.iter().map(|n| Term::Leaf(l(n))).collect()),
    )
}

fn bounds() -> Bounds {
    Bounds::atoms(4, 4)
}

/// `p` with the composite of one instance replaced.
fn corrupt_graft(
    p: &EntriesOnlyPresentation,
    f: Operand,
    x: Label,
    g: Operand,
    y: Label,
    replacement: Structure,
) -> EntriesOnlyPresentation {
    let inner = p.clone();
    p.with_compose(move |a, u, b, v| {
        if (a, u, b, v) == (&f, &x, &g, &y) {
            Ok(replacement.clone())
        } else {
            Ok(inner.compose(a, u, b, v)?.value)
        }
    })
}

/// `m` with the value at one input replaced.
fn corrupt_map(
    m: &NaturalMap,
    at: FiniteSet,
    input: Structure,
    replacement: Structure,
) -> NaturalMap {
    let inner = m.clone();
    NaturalMap::new(
        format!("{}~", m.name()),
        m.source().clone(),
        m.target().clone(),
        move |x, v| -> Result<Structure> {
            if x == &at && v == &input {
                Ok(replacement.clone())
            } else {
                inner.apply(x, v)
            }
        },
    )
}

fn cyclic_orders() -> EntriesOnlyPresentation {
    ZooModel::CyclicOrders.presentation().expect("zoo model")
}

fn linear_orders() -> ExchangeableOutputPresentation {
    ZooModel::CyclicOrders
        .rooted_view()
        .expect("zoo model")
        .presentation
}

fn entries_only_associativity() -> Report {
    let p = corrupt_graft(
        &cyclic_orders(),
        Operand::new(set(&["a", "b", "c"]), cycle(&["a", "b", "c"])),
        l("a"),
        Operand::new(set(&["a", "d"]), cycle(&["a", "d"])),
        l("d"),
        cycle(&["a", "c", "b"]),
    );
    check_entries_only(&p, &bounds())
}

fn entries_only_unit() -> Report {
    let p = corrupt_graft(
        &cyclic_orders(),
        Operand::new(set(&["a", "d"]), cycle(&["a", "d"])),
        l("d"),
        Operand::new(set(&["a", "b", "c"]), cycle(&["a", "b", "c"])),
        l("a"),
        cycle(&["a", "c", "b"]),
    );
    check_entries_only(&p, &bounds())
}

fn entries_only_equivariance() -> Report {
    let p = corrupt_graft(
        &cyclic_orders(),
        Operand::new(set(&["a", "b", "c"]), cycle(&["a", "b", "c"])),
        l("c"),
        Operand::new(set(&["c", "d"]), cycle(&["c", "d"])),
        l("c"),
        cycle(&["a", "d", "b"]),
    );
    check_entries_only(&p, &bounds())
}

fn operad_associativity() -> Report {
    let o = linear_orders();
    let inner = o.base.clone();
    let target = (
        Operand::new(set(&["a", "b"]), linear(&["a", "b"])),
        l("a"),
        Operand::new(set(&["c", "d"]), linear(&["c", "d"])),
    );
    let base = o.base.with_compose(move |f, x, g| {
        if (f, x, g) == (&target.0, &target.1, &target.2) {
            Ok(linear(&["d", "c", "b"]))
        } else {
            Ok(inner.compose(f, x, g)?.value)
        }
    });
    check_operad(&base, &bounds())
}

fn operad_unit() -> Report {
    let o = linear_orders();
    let inner = o.base.clone();
    let target = (
        Operand::new(set(&["a", "b"]), linear(&["a", "b"])),
        l("b"),
        Operand::new(set(&["b"]), linear(&["b"])),
    );
    let base = o.base.with_compose(move |f, x, g| {
        if (f, x, g) == (&target.0, &target.1, &target.2) {
            Ok(linear(&["b", "a"]))
        } else {
            Ok(inner.compose(f, x, g)?.value)
        }
    });
    check_operad(&base, &bounds())
}

fn exchange_involution() -> Report {
    let o = linear_orders();
    let inner = o.clone();
    let target = (
        l("a"),
        Operand::new(set(&["a", "b", "c"]), linear(&["b", "a", "c"])),
    );
    let o = o.with_dact(move |x, f| {
        if (x, f) == (&target.0, &target.1) {
            Ok(f.value.clone())
        } else {
            Ok(inner.dact(x, f)?.value)
        }
    });
    check_exchangeable_output(&o, &Bounds::atoms(3, 3))
}

fn algebraic(model: ZooModel) -> AlgebraicEntriesOnly {
    eo_componential_to_algebraic(&model.presentation().expect("zoo model"))
}

/// `(f, g)` in `(∂S·∂S)(X)` for cyclic orders, with `f` on `X1 ∪ {*X1}`.
fn triangle_pair(f: &[Label], x1: &FiniteSet, g: &[Label], x2: &FiniteSet) -> Structure {
    let mk = |labels: &[Label]| {
        Structure::model(
            "cyc",
            Term::node("cyc", labels.iter().cloned().map(Term::Leaf).collect()),
        )
    };
    Structure::pair(mk(f), mk(g), x1.clone(), x2.clone())
}

fn algebraic_associativity() -> Report {
    let a = algebraic(ZooModel::CyclicOrders);
    let (x1, x2) = (set(&["a", "b"]), set(&["c"]));
    let input = triangle_pair(&[l("a"), l("b"), x1.star()], &x1, &[l("c"), x2.star()], &x2);
    let rho = corrupt_map(
        &a.rho,
        set(&["a", "b", "c"]),
        input,
        cycle(&["a", "c", "b"]),
    );
    check_ca1(&a.with_rho(rho), &Bounds::atoms(3, 3), false)
}

fn algebraic_unit() -> Report {
    let a = algebraic(ZooModel::CyclicOrders);
    let (x1, x2) = (set(&["a"]), set(&["b", "c"]));
    let input = triangle_pair(&[l("a"), x1.star()], &x1, &[l("b"), l("c"), x2.star()], &x2);
    let rho = corrupt_map(
        &a.rho,
        set(&["a", "b", "c"]),
        input,
        cycle(&["a", "c", "b"]),
    );
    check_ca2(&a.with_rho(rho), &Bounds::atoms(3, 3))
}

fn algebraic_operad_associativity() -> Report {
    let exo = alg_eo_to_alg_exo(&algebraic(ZooModel::CyclicOrders));
    let mut base = exo.base.clone();
    // ν on (∂∂S·∂S)({a, b}): f on {a} ∪ two stars, g on {b} ∪ *{b}.
    let (x1, x2) = (set(&["a"]), set(&["b"]));
    let s1 = x1.star();
    let s2 = x1.with_star().star();
    let mk = |labels: Vec<Label>| {
        Structure::model(
            "cyc",
            Term::node("cyc", labels.into_iter().map(Term::Leaf).collect()),
        )
    };
    let input = Structure::pair(
        mk(vec![l("a"), s1.clone(), s2.clone()]),
        mk(vec![l("b"), x2.star()]),
        x1.clone(),
        x2.clone(),
    );
    let whole = set(&["a", "b"]);
    let out = base.nu.apply(&whole, &input).expect("ν is defined");
    let labels = out.as_model("cyc").expect("cyc").leaves();
    let flipped = mk(vec![
        labels[0].clone(),
        labels[2].clone(),
        labels[1].clone(),
    ]);
    base.nu = corrupt_map(&base.nu, whole, input, flipped);
    check_oa(&base, &Bounds::atoms(3, 3), false)
}

fn exchange_pentagon() -> Report {
    let exo = alg_eo_to_alg_exo(&algebraic(ZooModel::CyclicOrders));
    let ds = exo.species().derivative();
    let exo: AlgebraicExchangeableOutput = exo.with_d(NaturalMap::identity(&ds).renamed("D"));
    check_d_axioms(&exo, &Bounds::atoms(3, 3))
}

/// The ten documented corruptions.
pub fn negative_controls() -> Vec<NegativeControl> {
    vec![
        NegativeControl {
            name: "cyclic orders, one composite of (a b c) a∘d (a d) rotated",
            family: "entries-only associativity",
            law: "(A1)",
            build: entries_only_associativity,
        },
        NegativeControl {
            name: "cyclic orders, id_{a,d} d∘a (a b c) reversed",
            family: "entries-only unit",
            law: "(U1)",
            build: entries_only_unit,
        },
        NegativeControl {
            name: "cyclic orders, one composite of (a b c) c∘c (c d) reversed",
            family: "entries-only equivariance",
            law: "(EQ)",
            build: entries_only_equivariance,
        },
        NegativeControl {
            name: "linear orders, (a b) ∘a (c d) reversed",
            family: "operad associativity",
            law: "[A2]",
            build: operad_associativity,
        },
        NegativeControl {
            name: "linear orders, (a b) ∘b id_b reversed",
            family: "operad unit",
            law: "[U2]",
            build: operad_unit,
        },
        NegativeControl {
            name: "linear orders, D_a fixes (b a c)",
            family: "exchange involution",
            law: "(DIN)",
            build: exchange_involution,
        },
        NegativeControl {
            name: "algebraic cyclic orders, one value of ρ reversed",
            family: "algebraic associativity",
            law: "(CA1) ρ21∘γ1 = ρ11",
            build: algebraic_associativity,
        },
        NegativeControl {
            name: "algebraic cyclic orders, ρ on a unit-shaped input reversed",
            family: "algebraic unit",
            law: "(CA2)",
            build: algebraic_unit,
        },
        NegativeControl {
            name: "∂(cyclic orders), one value of ν reversed",
            family: "algebraic operad associativity",
            law: "[OA1] ν21∘β1 = ν11",
            build: algebraic_operad_associativity,
        },
        NegativeControl {
            name: "∂(cyclic orders) with D = id",
            family: "algebraic exchange",
            law: "(D4)",
            build: exchange_pentagon,
        },
    ]
}

/// Every control against its uncorrupted baseline: the baseline passes and
/// the corruption is caught.
pub fn baseline_passes() -> Vec<(&'static str, Report)> {
    let b = bounds();
    vec![
        ("cyclic orders", check_entries_only(&cyclic_orders(), &b)),
        (
            "linear orders",
            check_exchangeable_output(&linear_orders(), &Bounds::atoms(3, 3)),
        ),
        (
            "algebraic cyclic orders",
            check_algebraic_entries_only(
                &algebraic(ZooModel::CyclicOrders),
                &Bounds::atoms(3, 3),
                false,
            ),
        ),
        (
            "∂(cyclic orders)",
            check_d_axioms(
                &alg_eo_to_alg_exo(&algebraic(ZooModel::CyclicOrders)),
                &Bounds::atoms(3, 3),
            ),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_control_is_caught_by_its_law() {
        for c in negative_controls() {
            let r = c.run();
            assert!(c.detected(&r), "{}: {} not caught\n{r}", c.name, c.law);
        }
    }

    #[test]
    fn baselines_pass() {
        for (name, r) in baseline_passes() {
            assert!(r.passed(), "{name}\n{r}");
        }
    }
}
