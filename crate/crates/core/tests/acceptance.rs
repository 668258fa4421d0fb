//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process exits nonzero if any criterion fails for a reason other than the
//! single known deviation listed in `KNOWN`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use cyclic_operads::algebraic::AlgebraicExchangeableOutput;
use cyclic_operads::algebraic::{check_algebraic_entries_only, check_d_axioms};
use cyclic_operads::componential::{
    check_entries_only, check_entries_only_derived, check_exchangeable_output,
    check_exchangeable_output_derived, Operand,
};
use cyclic_operads::controls::{baseline_passes, negative_controls};
use cyclic_operads::format::PresentationFile;
use cyclic_operads::isos::{
    associator, cardinality_derivative, commutator, exchange, left_unitor, point_splitting,
    pre_lie_iso, pre_lie_left_unitor, pre_lie_right_pointing, pre_lie_right_unit,
    product_derivative, right_unitor, substitution_left_unit, substitution_right_unit,
    sum_derivative, triangle_constituents, triangle_constituents_direct, triangle_iso,
    triangle_left_unitor, triangle_right_unitor,
};
use cyclic_operads::labels::atom_pool;
use cyclic_operads::species::check_functoriality;
use cyclic_operads::translations::{
    alg_eo_to_alg_exo, alg_exo_to_alg_eo, alg_exo_to_alg_eo_direct, check_alg_eo_morphism,
    check_alg_exo_morphism, check_eo_isomorphism, check_exo_isomorphism, check_same_entries_only,
    check_same_map, descent_counit, descent_integrate, eo_algebraic_to_componential,
    eo_componential_to_algebraic, eo_to_exo, exo_to_eo, iso_cc, iso_oo, normalize,
};
use cyclic_operads::zoo::{comm_species, cyclic_orders_species, Signature, ZooModel};
use cyclic_operads::{Bounds, FiniteSet, Report, Species};

/// Sub-checks that fail by construction; see the project notes.
const KNOWN: &[&str] = &["ρ★ invertible"];

/// Outcome of one criterion: failed sub-checks and a short summary.
struct Outcome {
    failed: Vec<String>,
    instances: u64,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            failed: Vec::new(),
            instances: 0,
            notes: Vec::new(),
        }
    }

    /// A report must pass and must have exercised every listed law.
    fn report(&mut self, label: &str, r: &Report, laws: &[&str]) {
        self.instances += total(r);
        if total(r) == 0 {
            self.failed.push(format!("{label}: vacuous"));
        }
        if !r.passed() {
            self.failed
                .push(format!("{label}: {}", r.failing_laws().join(", ")));
            eprintln!("{r}");
        }
        for law in laws {
            if r.instances(law) == 0 {
                self.failed.push(format!("{label}: no instance of {law}"));
            }
        }
    }

    fn expect(&mut self, label: &str, ok: bool) {
        self.instances += 1;
        if !ok {
            self.failed.push(label.to_string());
        }
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }
}

fn total(r: &Report) -> u64 {
    r.laws.values().map(|t| t.instances).sum()
}

fn set(n: usize) -> FiniteSet {
    FiniteSet::new(atom_pool(n))
}

fn subsets(x: &FiniteSet) -> Vec<FiniteSet> {
    let labels: Vec<_> = x.iter().cloned().collect();
    (0u32..1 << labels.len())
        .map(|mask| {
            FiniteSet::new(
                labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, l)| l.clone()),
            )
        })
        .collect()
}

/// `|S·T|(X)` summed over splits, computed without the product species.
fn product_count(s: &Species, t: &Species, x: &FiniteSet) -> usize {
    subsets(x)
        .iter()
        .map(|x1| s.count(x1) * t.count(&x.difference(x1)))
        .sum()
}

fn double_factorial(n: i64) -> usize {
    if n <= 1 {
        1
    } else {
        n as usize * double_factorial(n - 2)
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn zoo_species() -> Vec<Species> {
    vec![
        comm_species(),
        cyclic_orders_species(),
        Species::cardinality(2),
        Species::sum(vec![Species::cardinality(1), Species::cardinality(2)]),
    ]
}

fn models() -> Vec<ZooModel> {
    vec![
        ZooModel::Comm,
        ZooModel::CyclicOrders,
        ZooModel::FreeCyclic(Signature::ternary(5)),
    ]
}

// -------------------------------------------------------------- criteria

fn species_algebra() -> Outcome {
    let mut o = Outcome::new();
    let b4 = Bounds::atoms(4, 4);
    let b3 = Bounds::atoms(3, 3);
    let free = ZooModel::FreeCyclic(Signature::ternary(4))
        .presentation()
        .unwrap()
        .carrier;
    let mut base = zoo_species();
    base.push(free);
    for s in &base {
        o.report(
            &format!("functoriality {}", s.name()),
            &check_functoriality(s, &b4),
            &[],
        );
    }
    let (s, t) = (comm_species(), cyclic_orders_species());
    for compound in [
        Species::sum(vec![s.clone(), t.clone()]),
        Species::product(&s, &t),
        t.derivative(),
        t.pointing(),
        Species::substitution(&Species::cardinality(2), &t),
    ] {
        o.report(
            &format!("functoriality {}", compound.name()),
            &check_functoriality(&compound, &b4),
            &[],
        );
    }
    let u = Species::cardinality(2);
    let triple = Species::product(&Species::product(&s, &t), &u);
    o.report(
        "functoriality (S·T)·U",
        &check_functoriality(&triple, &b3),
        &[],
    );

    // Counting identities against direct enumeration.
    for s in &base {
        for t in &base {
            for x in b4.sets() {
                let n = x.len();
                let st = Species::product(s, t);
                o.expect("|S·T|", st.count(&x) == product_count(s, t, &x));
                o.expect(
                    "|S+T|",
                    Species::sum(vec![s.clone(), t.clone()]).count(&x) == s.count(&x) + t.count(&x),
                );
                o.expect(
                    "|S·T| = |T·S|",
                    st.count(&x) == Species::product(t, s).count(&x),
                );
                if n <= 3 {
                    for w in &base {
                        let l = Species::product(&st, w).count(&x);
                        let r = Species::product(s, &Species::product(t, w)).count(&x);
                        o.expect("|(S·T)·U| = |S·(T·U)|", l == r);
                    }
                }
            }
        }
        for x in b4.sets() {
            o.expect("|∂S|", s.derivative().count(&x) == s.count(&x.with_star()));
            o.expect("|S•|", s.pointing().count(&x) == x.len() * s.count(&x));
        }
    }

    // Product, substitution, derivative and cardinality isomorphisms.
    let e = Species::cardinality;
    for s in &zoo_species() {
        for iso in [
            left_unitor(s),
            right_unitor(s),
            substitution_left_unit(s),
            substitution_right_unit(s),
        ] {
            o.report(
                &format!("iso {}", iso.forward.name()),
                &iso.check(&b3, &b4),
                &[],
            );
        }
        for t in &zoo_species() {
            for iso in [
                commutator(s, t),
                sum_derivative(&[s.clone(), t.clone()]),
                product_derivative(s, t),
            ] {
                o.report(
                    &format!("iso {}", iso.forward.name()),
                    &iso.check(&b3, &b4),
                    &[],
                );
            }
        }
    }
    let (s, t) = (comm_species(), cyclic_orders_species());
    o.report("iso α", &associator(&s, &t, &e(2)).check(&b3, &b3), &[]);
    o.report("iso α", &associator(&t, &e(1), &t).check(&b3, &b3), &[]);
    for n in 1..=4 {
        o.report("iso ε_n", &cardinality_derivative(n).check(&b3, &b4), &[]);
    }
    o
}

fn canonical_isos() -> Outcome {
    let mut o = Outcome::new();
    let nat = Bounds::atoms(3, 3);
    let inv = Bounds::atoms(4, 4);
    let (s, t) = (comm_species(), cyclic_orders_species());
    let e2 = Species::cardinality(2);
    let mut isos = vec![
        associator(&s, &t, &e2),
        commutator(&s, &t),
        left_unitor(&t),
        right_unitor(&t),
        exchange(&t),
        exchange(&s),
        sum_derivative(&[s.clone(), t.clone()]),
        product_derivative(&s, &t),
        cardinality_derivative(2),
        cardinality_derivative(3),
        pre_lie_iso(&t, &s, &e2),
        pre_lie_iso(&t, &t, &t),
        triangle_iso(&t, &s, &e2),
        pre_lie_left_unitor(&t),
        pre_lie_right_pointing(&t),
        triangle_left_unitor(&t),
        triangle_right_unitor(&t),
        point_splitting(&t),
    ];
    isos.push(triangle_iso(&t, &t, &t));
    for iso in &isos {
        // The ternary maps double the star count; keep their inverse check at 3.
        let inv = if iso.forward.name().contains('β') || iso.forward.name().contains('γ') {
            &nat
        } else {
            &inv
        };
        o.report(
            &format!("iso {}", iso.forward.name()),
            &iso.check(&nat, inv),
            &[],
        );
    }
    for (a, b, c) in [
        (t.clone(), s.clone(), e2.clone()),
        (t.clone(), t.clone(), t.clone()),
    ] {
        let cons = triangle_constituents(&a, &b, &c);
        let direct = triangle_constituents_direct(&a, &b, &c);
        for (i, (k, d)) in cons.iter().zip(direct.iter()).enumerate() {
            let law = format!("γ{} pointwise", i + 1);
            o.report(&law, &k.forward.check_equal(d, &law, &nat), &[]);
        }
    }
    for sp in [t.clone(), s.clone()] {
        let rho = pre_lie_right_unit(&sp);
        o.report("ρ★ natural", &rho.check_naturality(&nat), &[]);
        let r = rho.check_bijective(&inv);
        o.instances += total(&r);
        if !r.passed() {
            o.failed.push("ρ★ invertible".to_string());
            let x = set(2);
            o.note(format!(
                "ρ★ on {}: |S★E1| = {} vs |S| = {}",
                sp.name(),
                rho.source().count(&x),
                rho.target().count(&x)
            ));
        }
    }
    o.failed.dedup();
    o
}

fn componential_suites() -> Outcome {
    let mut o = Outcome::new();
    let runs = [
        (ZooModel::Comm, Bounds::atoms(5, 5)),
        (ZooModel::CyclicOrders, Bounds::atoms(4, 4)),
        (
            ZooModel::FreeCyclic(Signature::ternary(4)),
            Bounds::atoms(4, 4),
        ),
    ];
    for (model, b) in &runs {
        let p = model.presentation().unwrap();
        o.report(
            model.name(),
            &check_entries_only(&p, b),
            &["(A1)", "(EQ)", "(U1)", "(UP)"],
        );
        o.report(
            model.name(),
            &check_entries_only_derived(&p, b),
            &["(CO)", "(A2)", "(U2)", "(EQ)'"],
        );
        // Composition agrees with the model's independent recomputation.
        let pool = atom_pool(2 * b.max_size);
        for nx in 2..=b.max_size {
            for ny in 2..=b.max_size + 2 - nx {
                let x = FiniteSet::new(pool[..nx].iter().cloned());
                let y = FiniteSet::new(pool[nx..nx + ny].iter().cloned());
                for f in p.carrier.eval(&x).iter() {
                    for g in p.carrier.eval(&y).iter() {
                        let (fo, go) = (
                            Operand::new(x.clone(), f.clone()),
                            Operand::new(y.clone(), g.clone()),
                        );
                        for xl in x.iter() {
                            for yl in y.iter() {
                                let got = p.compose(&fo, xl, &go, yl).map(|r| r.value);
                                let want = model.oracle_compose(&fo, xl, &go, yl);
                                o.expect(
                                    "compose = oracle",
                                    matches!((&got, &want), (Ok(a), Ok(b)) if a == b),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    let cyc = cyclic_orders_species();
    let counts: Vec<usize> = (2..=4).map(|n| cyc.count(&set(n))).collect();
    o.expect("cyclic orders 1, 2, 6", counts == [1, 2, 6]);
    o.expect(
        "cyclic orders (n-1)!",
        (2..=4).all(|n| cyc.count(&set(n)) == factorial(n - 1)),
    );
    let trees = ZooModel::FreeCyclic(Signature::ternary(5))
        .presentation()
        .unwrap()
        .carrier;
    let tree_counts: Vec<usize> = (2..=5).map(|n| trees.count(&set(n))).collect();
    o.expect("trees 1, 1, 3, 15", tree_counts == [1, 1, 3, 15]);
    o.expect(
        "trees (2n-5)!!",
        (3..=5).all(|n| trees.count(&set(n)) == double_factorial(2 * n as i64 - 5)),
    );
    o.note(format!("cyclic orders {counts:?}, trees {tree_counts:?}"));
    o
}

fn exchangeable_output_suites() -> Outcome {
    let mut o = Outcome::new();
    for model in models() {
        let b = if model == ZooModel::Comm {
            Bounds::atoms(4, 4)
        } else {
            Bounds::atoms(3, 3)
        };
        let exo = eo_to_exo(&model.presentation().unwrap());
        o.report(
            model.name(),
            &check_exchangeable_output(&exo, &b),
            &["(DC1)", "(DC2)", "(DIN)", "(DEX)"],
        );
        o.report(
            model.name(),
            &check_exchangeable_output_derived(&exo, &b),
            &["(DCO)"],
        );
    }
    o
}

fn round_trips() -> Outcome {
    let mut o = Outcome::new();
    let b = Bounds::atoms(3, 3);
    for model in models() {
        let name = model.name();
        let p = model.presentation().unwrap();

        // Componential and algebraic entries-only presentations.
        let a = eo_componential_to_algebraic(&p);
        let back = eo_algebraic_to_componential(&a);
        o.report(
            name,
            &check_same_entries_only(&p, &back, &Bounds::atoms(4, 4)),
            &[],
        );
        let again = eo_componential_to_algebraic(&back);
        o.report(name, &check_same_map(&again.rho, &a.rho, "ρ", &b), &[]);
        o.report(name, &check_same_map(&again.eta2, &a.eta2, "η2", &b), &[]);

        // Entries-only and exchangeable-output, both ways round.
        let exo = eo_to_exo(&p);
        let cc = exo_to_eo(&exo);
        o.report(
            name,
            &check_eo_isomorphism(&iso_cc(&p, &cc), &cc, &p, &b),
            &[],
        );
        let rooted = model.rooted_view().unwrap().presentation;
        let classes = exo_to_eo(&rooted);
        let oo = eo_to_exo(&classes);
        o.report(
            name,
            &check_exo_isomorphism(&iso_oo(&rooted, &oo), &rooted, &oo, &b),
            &[],
        );

        // Algebraic entries-only and exchangeable-output.
        let aexo = alg_eo_to_alg_exo(&a);
        let direct = alg_exo_to_alg_eo_direct(&aexo, &a.species);
        o.report(name, &check_same_map(&direct.rho, &a.rho, "ρ", &b), &[]);
        o.report(name, &check_same_map(&direct.eta2, &a.eta2, "η2", &b), &[]);
        let (normal, n) = alg_exo_to_alg_eo(&aexo);
        let phi = descent_counit(&a.species, &n.species);
        o.report(
            name,
            &check_alg_eo_morphism(&phi, &normal, &a, &b),
            &["ρ", "η2"],
        );
        let from_rooted = AlgebraicExchangeableOutput::from_componential(&rooted);
        let (eo, n) = alg_exo_to_alg_eo(&from_rooted);
        let round = alg_eo_to_alg_exo(&eo);
        o.report(
            name,
            &check_alg_exo_morphism(&n.psi, &from_rooted, &round, &b),
            &["ν", "η1", "D"],
        );
    }
    o
}

fn descent() -> Outcome {
    let mut o = Outcome::new();
    let b = Bounds::atoms(4, 4);
    for s in [
        Species::cardinality(2),
        comm_species(),
        cyclic_orders_species(),
    ] {
        let ex = exchange(&s).forward;
        let integrated = descent_integrate(&s.derivative(), &ex);
        for x in b.sets() {
            o.expect(
                &format!("class count {} on {x}", s.name()),
                integrated.count(&x) == s.count(&x),
            );
        }
        let phi = descent_counit(&s, &integrated);
        o.report(s.name(), &phi.check_naturality(&Bounds::atoms(3, 3)), &[]);
        o.report(s.name(), &phi.check_bijective(&b), &[]);
        let n = normalize(&s.derivative(), &ex);
        o.report(
            s.name(),
            &n.psi.check_inverse(&n.psi_inverse, &Bounds::atoms(3, 3)),
            &[],
        );
    }
    let e2 = Species::cardinality(2);
    let pair = descent_integrate(&e2.derivative(), &exchange(&e2).forward).count(&set(2));
    o.expect("∫(∂E2, ex) on a pair", pair == 1);
    o
}

fn algebraic_suites() -> Outcome {
    let mut o = Outcome::new();
    let b = Bounds::atoms(3, 3);
    for model in models() {
        let a = eo_componential_to_algebraic(&model.presentation().unwrap());
        o.report(
            model.name(),
            &check_algebraic_entries_only(&a, &b, true),
            &[
                "(CA1) ρ21∘γ1 = ρ11",
                "(CA1) ρ2∘γ = ρ1",
                "(CA2)",
                "right unit square",
                "ρ∘c = ρ",
            ],
        );
        let exo = alg_eo_to_alg_exo(&a);
        o.report(
            model.name(),
            &check_d_axioms(&exo, &b),
            &[
                "[OA1] ν21∘β1 = ν11",
                "[OA1] ν22∘β2 = ν12",
                "[OA1] ν23∘β3 = ν13",
                "[OA2] left",
                "[OA2] right",
                "(D0)",
                "(D1)",
                "(D2)",
                "(D3)",
                "(D4)",
            ],
        );
    }
    o
}

fn controls() -> Outcome {
    let mut o = Outcome::new();
    let all = negative_controls();
    o.expect("ten controls", all.len() == 10);
    for c in &all {
        let r = c.run();
        o.instances += total(&r);
        if !c.detected(&r) {
            o.failed
                .push(format!("{} not detected by {}", c.name, c.law));
        }
    }
    for (name, r) in baseline_passes() {
        o.report(&format!("uncorrupted {name}"), &r, &[]);
    }
    o
}

fn cyclops(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclops"))
        .args(args)
        .output()
        .expect("cyclops runs");
    let text =
        String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap_or(-1), text)
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn cli() -> Outcome {
    let mut o = Outcome::new();
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    fs::create_dir_all(&dir).unwrap();
    for model in ZooModel::NAMES {
        let file = dir.join(format!("{model}.txt"));
        let path = file.to_str().unwrap();
        let (code, text) = cyclops(&["zoo", model, "--size-cap", "4", "--out", path]);
        o.expect(&format!("zoo {model} exit {code}: {text}"), code == 0);
        let (code, text) = cyclops(&["check", path]);
        o.expect(&format!("check {model} exit {code}: {text}"), code == 0);
        let written = fs::read_to_string(&file).unwrap();
        let parsed = PresentationFile::parse(&written).map(|p| p.render());
        o.expect(
            &format!("render/parse {model}"),
            parsed.as_deref() == Ok(written.as_str()),
        );
    }
    let (code, text) = cyclops(&[
        "check",
        fixture("cyclic-orders-4-corrupted.txt").to_str().unwrap(),
    ]);
    o.expect(
        &format!("corrupted exit {code}"),
        code == 1 && text.contains("(A1)"),
    );
    let (code, text) = cyclops(&[
        "check",
        fixture("cyclic-orders-4-malformed.txt").to_str().unwrap(),
    ]);
    o.expect(
        &format!("malformed exit {code}"),
        code == 2 && text.contains("line 48"),
    );
    let original = fs::read_to_string(fixture("cyclic-orders-4.txt")).unwrap();
    let parsed = PresentationFile::parse(&original).map(|p| p.render());
    o.expect(
        "render/parse fixture",
        parsed.as_deref() == Ok(original.as_str()),
    );
    o
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("species algebra", species_algebra),
        ("canonical isomorphisms", canonical_isos),
        ("componential axioms", componential_suites),
        ("exchangeable-output axioms", exchangeable_output_suites),
        ("round trips", round_trips),
        ("descent", descent),
        ("algebraic laws", algebraic_suites),
        ("negative controls", controls),
        ("command line", cli),
    ];
    let mut unexpected = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        let verdict = if outcome.failed.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let mut line = format!(
            "criterion {} {verdict}: {title} ({} checks, {secs:.1}s)",
            i + 1,
            outcome.instances
        );
        if !outcome.failed.is_empty() {
            line += &format!(" failed: {}", outcome.failed.join("; "));
        }
        if !outcome.notes.is_empty() {
            line += &format!(" [{}]", outcome.notes.join("; "));
        }
        println!("{line}");
        unexpected.extend(
            outcome
                .failed
                .into_iter()
                .filter(|f| !KNOWN.contains(&f.as_str())),
        );
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
