//! Species as lazily evaluated expression trees.
//!
//! A species assigns to every finite set `X` the finite set `S(X)` of its
//! structures and to every bijection `σ: Y → X` a transport `S(X) → S(Y)`.
//! Evaluation results are memoised per set and returned sorted, so two
//! species with equal carriers produce equal sequences.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::labels::{
    all_bijections, enumerate_binary_decompositions, enumerate_partitions, partition_as_set,
    Bijection, FiniteSet, Label,
};
use crate::report::Report;
use crate::structure::Structure;

/// A species given directly by enumeration and transport.
pub trait SpeciesImpl: Send + Sync {
    fn name(&self) -> String;
    fn structures(&self, set: &FiniteSet) -> Vec<Structure>;
    /// Transport along `σ: Y → X` of a structure on `X`.
    fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure>;
}

enum Kind {
    Cardinality(usize),
    Sum(Vec<Species>),
    Product(Species, Species),
    Substitution(Species, Species),
    Derivative(Species),
    Pointing(Species),
    Custom(Arc<dyn SpeciesImpl>),
}

struct Node {
    kind: Kind,
    name: String,
    memo: RwLock<HashMap<FiniteSet, Arc<[Structure]>>>,
}

/// A cheaply clonable handle on a species expression.
#[derive(Clone)]
pub struct Species(Arc<Node>);

impl Species {
    fn build(kind: Kind, name: String) -> Species {
        Species(Arc::new(Node {
            kind,
            name,
            memo: RwLock::new(HashMap::new()),
        }))
    }

    /// `E_n`: one structure on sets of size `n`, none elsewhere.
    pub fn cardinality(n: usize) -> Species {
        Species::build(Kind::Cardinality(n), format!("E{n}"))
    }

    /// The tagged disjoint union of the given species.
    pub fn sum(summands: Vec<Species>) -> Species {
        let name = format!(
            "({})",
            summands
                .iter()
                .map(|s| s.name().to_string())
                .collect::<Vec<_>>()
                .join(" + ")
        );
        Species::build(Kind::Sum(summands), name)
    }

    pub fn product(left: &Species, right: &Species) -> Species {
        let name = format!("({}·{})", left.name(), right.name());
        Species::build(Kind::Product(left.clone(), right.clone()), name)
    }

    pub fn substitution(outer: &Species, inner: &Species) -> Species {
        let name = format!("({}∘{})", outer.name(), inner.name());
        Species::build(Kind::Substitution(outer.clone(), inner.clone()), name)
    }

    /// `∂S(X) = S(X ∪ {*X})`.
    pub fn derivative(&self) -> Species {
        Species::build(Kind::Derivative(self.clone()), format!("∂{}", self.name()))
    }

    /// `S•(X) = S(X) × X`.
    pub fn pointing(&self) -> Species {
        Species::build(Kind::Pointing(self.clone()), format!("{}•", self.name()))
    }

    pub fn custom(imp: impl SpeciesImpl + 'static) -> Species {
        let name = imp.name();
        Species::build(Kind::Custom(Arc::new(imp)), name)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Same expression node (not merely equal carriers).
    pub fn ptr_eq(&self, other: &Species) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The sorted structures on `set`.
    pub fn eval(&self, set: &FiniteSet) -> Arc<[Structure]> {
        if let Some(hit) = self.0.memo.read().expect("memo lock").get(set) {
            return hit.clone();
        }
        let mut items = self.compute(set);
        items.sort();
        items.dedup();
        let items: Arc<[Structure]> = items.into();
        self.0
            .memo
            .write()
            .expect("memo lock")
            .entry(set.clone())
            .or_insert(items)
            .clone()
    }

    pub fn count(&self, set: &FiniteSet) -> usize {
        self.eval(set).len()
    }

    pub fn contains(&self, set: &FiniteSet, value: &Structure) -> bool {
        self.eval(set).binary_search(value).is_ok()
    }

    fn compute(&self, set: &FiniteSet) -> Vec<Structure> {
        match &self.0.kind {
            Kind::Cardinality(n) => {
                if set.len() == *n {
                    vec![Structure::Whole(set.clone())]
                } else {
                    vec![]
                }
            }
            Kind::Sum(parts) => parts
                .iter()
                .enumerate()
                .flat_map(|(i, s)| {
                    s.eval(set)
                        .iter()
                        .map(|v| Structure::tagged(i, v.clone()))
                        .collect::<Vec<_>>()
                })
                .collect(),
            Kind::Product(l, r) => {
                let mut out = Vec::new();
                for d in enumerate_binary_decompositions(set) {
                    let (x1, x2) = (&d.parts[0], &d.parts[1]);
                    let ls = l.eval(x1);
                    if ls.is_empty() {
                        continue;
                    }
                    let rs = r.eval(x2);
                    for f in ls.iter() {
                        for g in rs.iter() {
                            out.push(Structure::pair(
                                f.clone(),
                                g.clone(),
                                x1.clone(),
                                x2.clone(),
                            ));
                        }
                    }
                }
                out
            }
            Kind::Substitution(outer, inner) => {
                let mut out = Vec::new();
                for blocks in enumerate_partitions(set) {
                    let mut blocks = blocks;
                    blocks.sort_by_key(|b| Label::Block(b.clone()));
                    let partition = partition_as_set(&blocks).expect("blocks are nonempty");
                    let outers = outer.eval(&partition);
                    if outers.is_empty() {
                        continue;
                    }
                    let per_block: Vec<Arc<[Structure]>> =
                        blocks.iter().map(|b| inner.eval(b)).collect();
                    for choice in cartesian(&per_block) {
                        let inner: Arc<[Structure]> = choice.into();
                        for f in outers.iter() {
                            out.push(Structure::Subst {
                                partition: partition.clone(),
                                outer: Arc::new(f.clone()),
                                inner: inner.clone(),
                            });
                        }
                    }
                }
                out
            }
            Kind::Derivative(s) => s.eval(&set.with_star()).to_vec(),
            Kind::Pointing(s) => {
                let mut out = Vec::new();
                for f in s.eval(set).iter() {
                    for x in set {
                        out.push(Structure::pointed(f.clone(), x.clone()));
                    }
                }
                out
            }
            Kind::Custom(imp) => imp.structures(set),
        }
    }

    /// Transport along `σ: Y → X` of a structure on `X = codomain(σ)`.
    pub fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure> {
        let bad = || Error::malformed(self.name(), sigma.codomain(), value);
        match &self.0.kind {
            Kind::Cardinality(_) => match value {
                Structure::Whole(x) if x == sigma.codomain() => {
                    Ok(Structure::Whole(sigma.domain().clone()))
                }
                _ => Err(bad()),
            },
            Kind::Sum(parts) => {
                let (i, v) = value.as_tagged().map_err(|_| bad())?;
                let s = parts.get(i).ok_or_else(bad)?;
                Ok(Structure::tagged(i, s.transport(sigma, v)?))
            }
            Kind::Product(l, r) => {
                let (f, g, x1, x2) = value.as_pair().map_err(|_| bad())?;
                if !x1.is_disjoint(x2) || &x1.union(x2) != sigma.codomain() {
                    return Err(bad());
                }
                let s1 = sigma.restrict_corestrict(x1)?;
                let s2 = sigma.restrict_corestrict(x2)?;
                Ok(Structure::pair(
                    l.transport(&s1, f)?,
                    r.transport(&s2, g)?,
                    s1.domain().clone(),
                    s2.domain().clone(),
                ))
            }
            Kind::Substitution(outer, inner) => {
                let Structure::Subst {
                    partition,
                    outer: f,
                    inner: gs,
                } = value
                else {
                    return Err(bad());
                };
                // Each block p is identified with its preimage σ⁻¹(p).
                let mut moved = Vec::with_capacity(partition.len());
                for (label, g) in partition.iter().zip(gs.iter()) {
                    let Label::Block(p) = label else {
                        return Err(bad());
                    };
                    let piece = sigma.restrict_corestrict(p)?;
                    let new_block = Label::block(piece.domain())?;
                    moved.push((new_block, label.clone(), inner.transport(&piece, g)?));
                }
                let block_map = Bijection::from_pairs(
                    moved.iter().map(|(new, old, _)| (new.clone(), old.clone())),
                )?;
                let new_outer = outer.transport(&block_map, f)?;
                moved.sort_by(|a, b| a.0.cmp(&b.0));
                Ok(Structure::Subst {
                    partition: block_map.domain().clone(),
                    outer: Arc::new(new_outer),
                    inner: moved.into_iter().map(|(_, _, g)| g).collect(),
                })
            }
            Kind::Derivative(s) => s.transport(&sigma.partial_extension(), value),
            Kind::Pointing(s) => {
                let (f, x) = value.as_pointed().map_err(|_| bad())?;
                Ok(Structure::pointed(
                    s.transport(sigma, f)?,
                    sigma.preimage_or_err(x)?,
                ))
            }
            Kind::Custom(imp) => imp.transport(sigma, value),
        }
    }
}

impl fmt::Debug for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn cartesian(factors: &[Arc<[Structure]>]) -> Vec<Vec<Structure>> {
    let mut acc: Vec<Vec<Structure>> = vec![Vec::new()];
    for factor in factors {
        let mut next = Vec::with_capacity(acc.len() * factor.len());
        for prefix in &acc {
            for item in factor.iter() {
                let mut v = prefix.clone();
                v.push(item.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// `E_n`.
pub fn species_e(n: usize) -> Species {
    Species::cardinality(n)
}

pub fn sum(s: &Species, t: &Species) -> Species {
    Species::sum(vec![s.clone(), t.clone()])
}

pub fn product(s: &Species, t: &Species) -> Species {
    Species::product(s, t)
}

pub fn substitution(s: &Species, t: &Species) -> Species {
    Species::substitution(s, t)
}

pub fn derivative(s: &Species) -> Species {
    s.derivative()
}

pub fn pointing(s: &Species) -> Species {
    s.pointing()
}

/// Checks the functor laws on every set of the bounds and every bijection
/// between them: identities act trivially, transport is contravariantly
/// compositional, lands in the carrier and is one-to-one.
pub fn check_functoriality(species: &Species, bounds: &Bounds) -> Report {
    let sets = bounds.sets();
    Report::fan_out(
        format!("functoriality of {}", species.name()),
        &sets,
        |x, report| {
            let xs = species.eval(x);
            for f in xs.iter() {
                report.check_eq(
                    "identity",
                    species.transport(&Bijection::identity(x), f),
                    Ok(f.clone()),
                    || format!("f = {f} on {x}"),
                );
            }
            for y in sets.iter().filter(|y| y.len() == x.len()) {
                let ys = species.eval(y);
                for sigma in all_bijections(y, x).expect("same size") {
                    let mut images = Vec::with_capacity(xs.len());
                    for f in xs.iter() {
                        let moved = species.transport(&sigma, f);
                        let inside = matches!(&moved, Ok(g) if ys.binary_search(g).is_ok());
                        report.record("closure", inside, || {
                            (
                                format!("σ = {sigma:?}, f = {f}"),
                                format!("{moved:?}"),
                                format!("an element of {}({y})", species.name()),
                            )
                        });
                        if let Ok(g) = moved {
                            images.push(g);
                        }
                    }
                    let mut distinct = images.clone();
                    distinct.sort();
                    distinct.dedup();
                    report.record(
                        "bijective",
                        distinct.len() == xs.len() && xs.len() == ys.len(),
                        || {
                            (
                                format!("σ = {sigma:?}"),
                                format!("{} distinct images", distinct.len()),
                                format!("{} structures on {x}, {} on {y}", xs.len(), ys.len()),
                            )
                        },
                    );
                    for z in sets.iter().filter(|z| z.len() == x.len()) {
                        for tau in all_bijections(z, y).expect("same size") {
                            let st = sigma.compose(&tau).expect("composable");
                            for f in xs.iter() {
                                let lhs = species.transport(&st, f);
                                let rhs = species
                                    .transport(&sigma, f)
                                    .and_then(|g| species.transport(&tau, &g));
                                report.check_eq("composition", lhs, rhs, || {
                                    format!("σ = {sigma:?}, τ = {tau:?}, f = {f}")
                                });
                            }
                        }
                    }
                }
            }
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::atom_pool;

    fn set(names: &[&str]) -> FiniteSet {
        FiniteSet::atoms(names.iter().copied()).unwrap()
    }

    #[test]
    fn cardinality_species() {
        let e2 = species_e(2);
        assert_eq!(
            e2.eval(&set(&["a", "b"])).to_vec(),
            vec![Structure::Whole(set(&["a", "b"]))]
        );
        assert!(e2.eval(&set(&["a"])).is_empty());
        assert_eq!(species_e(0).count(&FiniteSet::empty()), 1);
    }

    #[test]
    fn sum_examples() {
        let e1 = species_e(1);
        assert_eq!(sum(&e1, &e1).count(&set(&["a"])), 2);
        assert_eq!(sum(&species_e(0), &species_e(2)).count(&set(&["a"])), 0);
        let s = sum(&e1, &e1);
        let left = Structure::tagged(0, Structure::Whole(set(&["a"])));
        let sigma = Bijection::from_pairs([(Label::atom("b").unwrap(), Label::atom("a").unwrap())])
            .unwrap();
        let moved = s.transport(&sigma, &left).unwrap();
        assert_eq!(moved.as_tagged().unwrap().0, 0);
    }

    #[test]
    fn product_examples() {
        let e1 = species_e(1);
        let p = product(&e1, &e1);
        assert_eq!(p.count(&set(&["a", "b"])), 2);
        assert_eq!(p.count(&set(&["a"])), 0);
    }

    #[test]
    fn substitution_examples() {
        let e1 = species_e(1);
        let e2 = species_e(2);
        assert_eq!(substitution(&e1, &e1).count(&set(&["a"])), 1);
        assert_eq!(substitution(&e2, &e1).count(&set(&["a", "b"])), 1);
        // E_1∘E_2 and E_2∘E_1 on four points: the pairings of four points.
        let x = FiniteSet::new(atom_pool(4));
        assert_eq!(substitution(&e2, &e2).count(&x), 3);
    }

    #[test]
    fn derivative_examples() {
        let e2 = species_e(2);
        let x = set(&["a"]);
        assert_eq!(
            e2.derivative().eval(&x).to_vec(),
            vec![Structure::Whole(x.with_star())]
        );
        assert_eq!(species_e(1).derivative().count(&FiniteSet::empty()), 1);
        assert_eq!(e2.derivative().count(&set(&["a", "b"])), 0);
    }

    #[test]
    fn pointing_examples() {
        let e2 = species_e(2);
        assert_eq!(e2.pointing().count(&set(&["a", "b"])), 2);
        assert_eq!(e2.pointing().count(&FiniteSet::empty()), 0);
        let p = Structure::pointed(
            Structure::Whole(set(&["a", "b"])),
            Label::atom("a").unwrap(),
        );
        let swap = Bijection::exchange(
            &set(&["a", "b"]),
            &Label::atom("a").unwrap(),
            &Label::atom("b").unwrap(),
        )
        .unwrap();
        let moved = e2.pointing().transport(&swap, &p).unwrap();
        assert_eq!(moved.as_pointed().unwrap().1, &Label::atom("b").unwrap());
    }

    #[test]
    fn functoriality_passes_for_kernel_species() {
        let bounds = Bounds::atoms(4, 3);
        let e1 = species_e(1);
        let e2 = species_e(2);
        for s in [
            e2.clone(),
            product(&e1, &e1),
            sum(&e1, &e2),
            substitution(&e2, &sum(&e1, &e2)),
            e2.derivative().derivative(),
            product(&e1, &e2).pointing(),
        ] {
            let r = check_functoriality(&s, &bounds);
            assert!(r.passed(), "{r}");
            assert!(r.instances("composition") > 0);
        }
    }

    struct Broken;
    impl SpeciesImpl for Broken {
        fn name(&self) -> String {
            "Broken".into()
        }
        fn structures(&self, set: &FiniteSet) -> Vec<Structure> {
            vec![Structure::Whole(set.clone())]
        }
        fn transport(&self, sigma: &Bijection, _value: &Structure) -> Result<Structure> {
            // Forgets to relabel whenever the target has two elements.
            if sigma.len() == 2 {
                Ok(Structure::Whole(sigma.codomain().clone()))
            } else {
                Ok(Structure::Whole(sigma.domain().clone()))
            }
        }
    }

    #[test]
    fn corrupted_transport_is_caught() {
        let r = check_functoriality(&Species::custom(Broken), &Bounds::atoms(3, 2));
        assert!(!r.passed());
        assert!(r.failures_of("closure") > 0);
    }
}
