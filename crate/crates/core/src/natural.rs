//! Natural transformations between species, with combinators and checkers.

use std::fmt;
use std::sync::Arc;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::labels::{all_bijections, FiniteSet};
use crate::report::Report;
use crate::species::Species;
use crate::structure::Structure;

pub type ComponentFn = Arc<dyn Fn(&FiniteSet, &Structure) -> Result<Structure> + Send + Sync>;

/// A family of maps `S(X) → T(X)`, one per finite set.
#[derive(Clone)]
pub struct NaturalMap {
    name: String,
    source: Species,
    target: Species,
    component: ComponentFn,
}

impl NaturalMap {
    pub fn new(
        name: impl Into<String>,
        source: Species,
        target: Species,
        component: impl Fn(&FiniteSet, &Structure) -> Result<Structure> + Send + Sync + 'static,
    ) -> NaturalMap {
        NaturalMap {
            name: name.into(),
            source,
            target,
            component: Arc::new(component),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Species {
        &self.source
    }

    pub fn target(&self) -> &Species {
        &self.target
    }

    pub fn renamed(&self, name: impl Into<String>) -> NaturalMap {
        NaturalMap {
            name: name.into(),
            ..self.clone()
        }
    }

    /// The component at `set` applied to `value`.
    pub fn apply(&self, set: &FiniteSet, value: &Structure) -> Result<Structure> {
        (self.component)(set, value)
    }

    pub fn identity(species: &Species) -> NaturalMap {
        NaturalMap::new(
            format!("id[{}]", species.name()),
            species.clone(),
            species.clone(),
            |_, v| Ok(v.clone()),
        )
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &NaturalMap) -> NaturalMap {
        let (a, b) = (self.component.clone(), next.component.clone());
        NaturalMap::new(
            format!("{} ∘ {}", next.name, self.name),
            self.source.clone(),
            next.target.clone(),
            move |x, v| b(x, &a(x, v)?),
        )
    }

    /// Chains maps left to right: `maps[n-1] ∘ ... ∘ maps[0]`.
    pub fn chain(maps: &[NaturalMap]) -> NaturalMap {
        let mut iter = maps.iter();
        let first = iter.next().expect("a nonempty chain").clone();
        iter.fold(first, |acc, m| acc.then(m))
    }

    /// `f·g`, acting on each side of a product split.
    pub fn product(f: &NaturalMap, g: &NaturalMap) -> NaturalMap {
        let (a, b) = (f.component.clone(), g.component.clone());
        NaturalMap::new(
            format!("({}·{})", f.name, g.name),
            Species::product(&f.source, &g.source),
            Species::product(&f.target, &g.target),
            move |_, v| {
                let (l, r, x1, x2) = v.as_pair()?;
                Ok(Structure::pair(
                    a(x1, l)?,
                    b(x2, r)?,
                    x1.clone(),
                    x2.clone(),
                ))
            },
        )
    }

    /// `∂f`, whose component at `X` is `f` at `X ∪ {*X}`.
    pub fn derivative(f: &NaturalMap) -> NaturalMap {
        let a = f.component.clone();
        NaturalMap::new(
            format!("∂{}", f.name),
            f.source.derivative(),
            f.target.derivative(),
            move |x, v| a(&x.with_star(), v),
        )
    }

    /// `f_0 + ... + f_n`, summand by summand.
    pub fn sum(maps: &[NaturalMap]) -> NaturalMap {
        let comps: Vec<ComponentFn> = maps.iter().map(|m| m.component.clone()).collect();
        NaturalMap::new(
            format!(
                "({})",
                maps.iter()
                    .map(|m| m.name.as_str())
                    .collect::<Vec<_>>()
                    .join(" + ")
            ),
            Species::sum(maps.iter().map(|m| m.source.clone()).collect()),
            Species::sum(maps.iter().map(|m| m.target.clone()).collect()),
            move |x, v| {
                let (i, inner) = v.as_tagged()?;
                let f = comps
                    .get(i)
                    .ok_or_else(|| Error::malformed("a sum", x, v))?;
                Ok(Structure::tagged(i, f(x, inner)?))
            },
        )
    }

    /// `[f_0, ..., f_n]`: a map out of a sum into a common target.
    pub fn copair(maps: &[NaturalMap], target: &Species) -> NaturalMap {
        let comps: Vec<ComponentFn> = maps.iter().map(|m| m.component.clone()).collect();
        NaturalMap::new(
            format!(
                "[{}]",
                maps.iter()
                    .map(|m| m.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            Species::sum(maps.iter().map(|m| m.source.clone()).collect()),
            target.clone(),
            move |x, v| {
                let (i, inner) = v.as_tagged()?;
                let f = comps
                    .get(i)
                    .ok_or_else(|| Error::malformed("a sum", x, v))?;
                f(x, inner)
            },
        )
    }

    /// The `index`-th injection into the sum of `summands`.
    pub fn injection(index: usize, summands: &[Species]) -> NaturalMap {
        NaturalMap::new(
            format!("in{index}"),
            summands[index].clone(),
            Species::sum(summands.to_vec()),
            move |_, v| Ok(Structure::tagged(index, v.clone())),
        )
    }

    /// Naturality squares for every bijection between sets of the bounds.
    pub fn check_naturality(&self, bounds: &Bounds) -> Report {
        let sets = bounds.sets();
        Report::fan_out(
            format!("naturality of {}", self.name),
            &sets,
            |x, report| {
                for y in sets.iter().filter(|y| y.len() == x.len()) {
                    for sigma in all_bijections(y, x).expect("same size") {
                        for f in self.source.eval(x).iter() {
                            let lhs = self
                                .apply(x, f)
                                .and_then(|g| self.target.transport(&sigma, &g));
                            let rhs = self
                                .source
                                .transport(&sigma, f)
                                .and_then(|g| self.apply(y, &g));
                            report.check_eq("naturality", lhs, rhs, || {
                                format!("{}: σ = {sigma:?}, f = {f}", self.name)
                            });
                        }
                    }
                }
            },
        )
    }

    /// Each component lands in the target and is a bijection onto it.
    pub fn check_bijective(&self, bounds: &Bounds) -> Report {
        let sets = bounds.sets();
        Report::fan_out(
            format!("bijectivity of {}", self.name),
            &sets,
            |x, report| {
                let targets = self.target.eval(x);
                let mut images = Vec::new();
                for f in self.source.eval(x).iter() {
                    let image = self.apply(x, f);
                    let inside = matches!(&image, Ok(g) if targets.binary_search(g).is_ok());
                    report.record("closure", inside, || {
                        (
                            format!("{} at {x}, f = {f}", self.name),
                            format!("{image:?}"),
                            format!("an element of {}({x})", self.target.name()),
                        )
                    });
                    if let Ok(g) = image {
                        images.push(g);
                    }
                }
                let n = images.len();
                images.sort();
                images.dedup();
                report.record("bijective", images.len() == n && n == targets.len(), || {
                    (
                        format!("{} at {x}", self.name),
                        format!("{} distinct images of {n} sources", images.len()),
                        format!("{} targets", targets.len()),
                    )
                });
            },
        )
    }

    /// `inverse ∘ self = id` and `self ∘ inverse = id` on every set of the bounds.
    pub fn check_inverse(&self, inverse: &NaturalMap, bounds: &Bounds) -> Report {
        let sets = bounds.sets();
        Report::fan_out(
            format!("{} and {} are mutually inverse", self.name, inverse.name),
            &sets,
            |x, report| {
                for f in self.source.eval(x).iter() {
                    report.check_eq(
                        "left inverse",
                        self.apply(x, f).and_then(|g| inverse.apply(x, &g)),
                        Ok(f.clone()),
                        || format!("{} at {x}, f = {f}", self.name),
                    );
                }
                for g in self.target.eval(x).iter() {
                    report.check_eq(
                        "right inverse",
                        inverse.apply(x, g).and_then(|f| self.apply(x, &f)),
                        Ok(g.clone()),
                        || format!("{} at {x}, g = {g}", inverse.name),
                    );
                }
            },
        )
    }

    /// Pointwise equality with another map on the same source, recorded under `law`.
    pub fn check_equal(&self, other: &NaturalMap, law: &str, bounds: &Bounds) -> Report {
        let sets = bounds.sets();
        Report::fan_out(
            format!("{} = {}", self.name, other.name),
            &sets,
            |x, report| {
                report.touch(law);
                for f in self.source.eval(x).iter() {
                    report.check_eq(law, self.apply(x, f), other.apply(x, f), || {
                        format!("at {x}, f = {f}")
                    });
                }
            },
        )
    }
}

impl fmt::Debug for NaturalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} → {}",
            self.name,
            self.source.name(),
            self.target.name()
        )
    }
}

/// A natural isomorphism given by both directions.
#[derive(Clone, Debug)]
pub struct Iso {
    pub forward: NaturalMap,
    pub backward: NaturalMap,
}

impl Iso {
    pub fn new(forward: NaturalMap, backward: NaturalMap) -> Iso {
        Iso { forward, backward }
    }

    pub fn inverse(&self) -> Iso {
        Iso {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn then(&self, next: &Iso) -> Iso {
        Iso {
            forward: self.forward.then(&next.forward),
            backward: next.backward.then(&self.backward),
        }
    }

    pub fn product(f: &Iso, g: &Iso) -> Iso {
        Iso {
            forward: NaturalMap::product(&f.forward, &g.forward),
            backward: NaturalMap::product(&f.backward, &g.backward),
        }
    }

    pub fn derivative(f: &Iso) -> Iso {
        Iso {
            forward: NaturalMap::derivative(&f.forward),
            backward: NaturalMap::derivative(&f.backward),
        }
    }

    pub fn sum(isos: &[Iso]) -> Iso {
        Iso {
            forward: NaturalMap::sum(&isos.iter().map(|i| i.forward.clone()).collect::<Vec<_>>()),
            backward: NaturalMap::sum(&isos.iter().map(|i| i.backward.clone()).collect::<Vec<_>>()),
        }
    }

    pub fn identity(species: &Species) -> Iso {
        Iso::new(NaturalMap::identity(species), NaturalMap::identity(species))
    }

    /// Naturality of both directions, bijectivity and two-sided inverses.
    pub fn check(&self, naturality: &Bounds, invertibility: &Bounds) -> Report {
        let mut report = self.forward.check_naturality(naturality);
        report.merge(self.backward.check_naturality(naturality));
        report.merge(self.forward.check_bijective(invertibility));
        report.merge(self.forward.check_inverse(&self.backward, invertibility));
        report.subject = format!("natural isomorphism {}", self.forward.name());
        report
    }
}
