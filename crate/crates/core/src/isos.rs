//! The canonical natural isomorphisms between species.
//!
//! Notation in the docs: `·` is the product, `∂` the derivative, `S★T = ∂S·T`
//! the pre-Lie product and `S▲T = ∂S·∂T` the triangle product. Maps that
//! act on multi-summand sums are assembled summand by summand; summand order
//! is part of the contract and documented on each constructor.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::labels::{partition_as_set, Bijection, FiniteSet, Label};
use crate::natural::{Iso, NaturalMap};
use crate::species::Species;
use crate::structure::Structure;

fn pair(l: Structure, r: Structure, x1: &FiniteSet, x2: &FiniteSet) -> Structure {
    Structure::pair(l, r, x1.clone(), x2.clone())
}

/// `S ★ T = ∂S·T`.
pub fn pre_lie(s: &Species, t: &Species) -> Species {
    Species::product(&s.derivative(), t)
}

/// `S ▲ T = ∂S·∂T`.
pub fn triangle(s: &Species, t: &Species) -> Species {
    Species::product(&s.derivative(), &t.derivative())
}

/// `α: (S·T)·U → S·(T·U)`, `((f,g),h) ↦ (f,(g,h))`.
pub fn associator(s: &Species, t: &Species, u: &Species) -> Iso {
    let st_u = Species::product(&Species::product(s, t), u);
    let s_tu = Species::product(s, &Species::product(t, u));
    let forward = NaturalMap::new("α", st_u.clone(), s_tu.clone(), |_, v| {
        let (fg, h, _, c) = v.as_pair()?;
        let (f, g, a, b) = fg.as_pair()?;
        Ok(pair(
            f.clone(),
            pair(g.clone(), h.clone(), b, c),
            a,
            &b.union(c),
        ))
    });
    let backward = NaturalMap::new("α⁻¹", s_tu, st_u, |_, v| {
        let (f, gh, a, _) = v.as_pair()?;
        let (g, h, b, c) = gh.as_pair()?;
        Ok(pair(
            pair(f.clone(), g.clone(), a, b),
            h.clone(),
            &a.union(b),
            c,
        ))
    });
    Iso::new(forward, backward)
}

/// `c: S·T → T·S`, `(f,g) ↦ (g,f)`.
pub fn commutator(s: &Species, t: &Species) -> Iso {
    let swap = |_: &FiniteSet, v: &Structure| -> Result<Structure> {
        let (f, g, a, b) = v.as_pair()?;
        Ok(pair(g.clone(), f.clone(), b, a))
    };
    let st = Species::product(s, t);
    let ts = Species::product(t, s);
    Iso::new(
        NaturalMap::new("c", st.clone(), ts.clone(), swap),
        NaturalMap::new("c", ts, st, swap),
    )
}

/// `λ: E_0·S → S`.
pub fn left_unitor(s: &Species) -> Iso {
    let e0s = Species::product(&Species::cardinality(0), s);
    let forward = NaturalMap::new("λ", e0s.clone(), s.clone(), |x, v| {
        let (unit, f, a, _) = v.as_pair()?;
        if !a.is_empty() || unit != &Structure::Whole(FiniteSet::empty()) {
            return Err(Error::malformed("E0·S", x, v));
        }
        Ok(f.clone())
    });
    let backward = NaturalMap::new("λ⁻¹", s.clone(), e0s, |x, f| {
        Ok(pair(
            Structure::Whole(FiniteSet::empty()),
            f.clone(),
            &FiniteSet::empty(),
            x,
        ))
    });
    Iso::new(forward, backward)
}

/// The right unitor `S·E_0 → S` of the product.
pub fn right_unitor(s: &Species) -> Iso {
    let se0 = Species::product(s, &Species::cardinality(0));
    let forward = NaturalMap::new("unitor_ρ", se0.clone(), s.clone(), |x, v| {
        let (f, unit, _, b) = v.as_pair()?;
        if !b.is_empty() || unit != &Structure::Whole(FiniteSet::empty()) {
            return Err(Error::malformed("S·E0", x, v));
        }
        Ok(f.clone())
    });
    let backward = NaturalMap::new("unitor_ρ⁻¹", s.clone(), se0, |x, f| {
        Ok(pair(
            f.clone(),
            Structure::Whole(FiniteSet::empty()),
            x,
            &FiniteSet::empty(),
        ))
    });
    Iso::new(forward, backward)
}

/// The bijection on `X ∪ {*X} ∪ {*(X∪{*X})}` exchanging the two stars.
pub fn star_exchange(x: &FiniteSet) -> Bijection {
    let once = x.with_star();
    let twice = once.with_star();
    Bijection::exchange(&twice, &x.star(), &once.star()).expect("both stars are present")
}

/// `ex: ∂∂S → ∂∂S`, transporting along the exchange of the two stars.
pub fn exchange(s: &Species) -> Iso {
    let dds = s.derivative().derivative();
    let s2 = s.clone();
    let map = NaturalMap::new("ex", dds.clone(), dds, move |x, v| {
        s2.transport(&star_exchange(x), v)
    });
    Iso::new(map.clone(), map)
}

/// `Δ: ∂(S_0 + ... + S_n) → ∂S_0 + ... + ∂S_n`, the identity on tagged values.
pub fn sum_derivative(summands: &[Species]) -> Iso {
    let lhs = Species::sum(summands.to_vec()).derivative();
    let rhs = Species::sum(summands.iter().map(|s| s.derivative()).collect());
    Iso::new(
        NaturalMap::new("Δ", lhs.clone(), rhs.clone(), |_, v| Ok(v.clone())),
        NaturalMap::new("Δ⁻¹", rhs, lhs, |_, v| Ok(v.clone())),
    )
}

/// `φ: ∂(S·T) → ∂S·T + S·∂T`.
///
/// A structure on `X ∪ {*X}` is sent to the summand whose part holds `*X`,
/// with `*X` renamed to the star of that part.
pub fn product_derivative(s: &Species, t: &Species) -> Iso {
    let lhs = Species::product(s, t).derivative();
    let rhs = Species::sum(vec![
        Species::product(&s.derivative(), t),
        Species::product(s, &t.derivative()),
    ]);
    let (s1, t1) = (s.clone(), t.clone());
    let forward = NaturalMap::new("φ", lhs.clone(), rhs.clone(), move |x, v| {
        let (f, g, x1, x2) = v.as_pair()?;
        let star = x.star();
        if x1.contains(&star) {
            let rest = x1.remove(&star);
            let sigma = Bijection::renaming(x1, &star, &rest.star())?;
            Ok(Structure::tagged(
                0,
                pair(s1.transport(&sigma, f)?, g.clone(), &rest, x2),
            ))
        } else if x2.contains(&star) {
            let rest = x2.remove(&star);
            let sigma = Bijection::renaming(x2, &star, &rest.star())?;
            Ok(Structure::tagged(
                1,
                pair(f.clone(), t1.transport(&sigma, g)?, x1, &rest),
            ))
        } else {
            Err(Error::malformed("∂(S·T)", x, v))
        }
    });
    let (s2, t2) = (s.clone(), t.clone());
    let backward = NaturalMap::new("φ⁻¹", rhs, lhs, move |x, v| {
        let (i, inner) = v.as_tagged()?;
        let (f, g, x1, x2) = inner.as_pair()?;
        let star = x.star();
        match i {
            0 => {
                let tau = Bijection::renaming(&x1.with_star(), &x1.star(), &star)?;
                Ok(pair(
                    s2.transport(&tau, f)?,
                    g.clone(),
                    &x1.insert(star),
                    x2,
                ))
            }
            1 => {
                let tau = Bijection::renaming(&x2.with_star(), &x2.star(), &star)?;
                Ok(pair(
                    f.clone(),
                    t2.transport(&tau, g)?,
                    x1,
                    &x2.insert(star),
                ))
            }
            _ => Err(Error::malformed("∂S·T + S·∂T", x, v)),
        }
    });
    Iso::new(forward, backward)
}

/// `ε_n: ∂E_n → E_{n-1}` for `n ≥ 1`.
pub fn cardinality_derivative(n: usize) -> Iso {
    assert!(n >= 1, "∂E_0 is empty and has no such isomorphism");
    let lhs = Species::cardinality(n).derivative();
    let rhs = Species::cardinality(n - 1);
    let forward = NaturalMap::new(format!("ε{n}"), lhs.clone(), rhs.clone(), |x, v| {
        if v == &Structure::Whole(x.with_star()) {
            Ok(Structure::Whole(x.clone()))
        } else {
            Err(Error::malformed("∂E_n", x, v))
        }
    });
    let backward = NaturalMap::new(format!("ε{n}⁻¹"), rhs, lhs, |x, v| {
        if v == &Structure::Whole(x.clone()) {
            Ok(Structure::Whole(x.with_star()))
        } else {
            Err(Error::malformed("E_n", x, v))
        }
    });
    Iso::new(forward, backward)
}

fn single_block(x: &FiniteSet) -> Result<FiniteSet> {
    partition_as_set(std::slice::from_ref(x))
}

/// `E_1∘S → S`: the only partition with one block is `{X}`.
///
/// An isomorphism for species with `S(∅) = ∅`; on the empty set the left
/// side is always empty.
pub fn substitution_left_unit(s: &Species) -> Iso {
    let e1 = Species::cardinality(1);
    let lhs = Species::substitution(&e1, s);
    let forward = NaturalMap::new("λ∘", lhs.clone(), s.clone(), |x, v| match v {
        Structure::Subst {
            partition, inner, ..
        } if inner.len() == 1 && *partition == single_block(x)? => Ok(inner[0].clone()),
        _ => Err(Error::malformed("E1∘S", x, v)),
    });
    let backward = NaturalMap::new("λ∘⁻¹", s.clone(), lhs, |x, f| {
        if x.is_empty() {
            return Err(Error::malformed("S on ∅", x, f));
        }
        let partition = single_block(x)?;
        Ok(Structure::Subst {
            outer: Arc::new(Structure::Whole(partition.clone())),
            partition,
            inner: vec![f.clone()].into(),
        })
    });
    Iso::new(forward, backward)
}

/// `S∘E_1 → S`: only the partition into singletons carries `E_1` on every
/// block, and the outer structure is relabeled along `{x} ↦ x`.
pub fn substitution_right_unit(s: &Species) -> Iso {
    let e1 = Species::cardinality(1);
    let lhs = Species::substitution(s, &e1);
    let singletons = |x: &FiniteSet| -> Result<(FiniteSet, Bijection)> {
        let blocks: Vec<FiniteSet> = x.iter().map(|l| FiniteSet::new([l.clone()])).collect();
        let partition = partition_as_set(&blocks)?;
        let to_blocks = Bijection::from_pairs(
            x.iter()
                .map(|l| Ok((l.clone(), Label::block(&FiniteSet::new([l.clone()]))?)))
                .collect::<Result<Vec<_>>>()?,
        )?;
        Ok((partition, to_blocks))
    };
    let s1 = s.clone();
    let forward = NaturalMap::new("ρ∘", lhs.clone(), s.clone(), move |x, v| {
        let (partition, to_blocks) = singletons(x)?;
        match v {
            Structure::Subst {
                partition: p,
                outer,
                ..
            } if *p == partition => s1.transport(&to_blocks, outer),
            _ => Err(Error::malformed("S∘E1", x, v)),
        }
    });
    let s2 = s.clone();
    let backward = NaturalMap::new("ρ∘⁻¹", s.clone(), lhs, move |x, f| {
        let (partition, to_blocks) = singletons(x)?;
        let outer = s2.transport(&to_blocks.inverse(), f)?;
        let inner = partition
            .iter()
            .map(|block| match block {
                Label::Block(p) => Ok(Structure::Whole(p.clone())),
                _ => Err(Error::malformed("partition", x, f)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Structure::Subst {
            partition,
            outer: Arc::new(outer),
            inner: inner.into(),
        })
    });
    Iso::new(forward, backward)
}

type Component = Box<dyn Fn(&FiniteSet, &Structure) -> Result<Structure> + Send + Sync>;

/// `(A_0 + ... + A_n)·U → A_0·U + ... + A_n·U`.
pub fn distribute_left(summands: &[Species], u: &Species) -> Iso {
    let lhs = Species::product(&Species::sum(summands.to_vec()), u);
    let rhs = Species::sum(summands.iter().map(|a| Species::product(a, u)).collect());
    let forward = NaturalMap::new("dist", lhs.clone(), rhs.clone(), |_, v| {
        let (tagged, w, x1, x2) = v.as_pair()?;
        let (i, a) = tagged.as_tagged()?;
        Ok(Structure::tagged(i, pair(a.clone(), w.clone(), x1, x2)))
    });
    let backward = NaturalMap::new("dist⁻¹", rhs, lhs, |_, v| {
        let (i, inner) = v.as_tagged()?;
        let (a, w, x1, x2) = inner.as_pair()?;
        Ok(pair(Structure::tagged(i, a.clone()), w.clone(), x1, x2))
    });
    Iso::new(forward, backward)
}

/// `U·(A_0 + ... + A_n) → U·A_0 + ... + U·A_n`.
pub fn distribute_right(u: &Species, summands: &[Species]) -> Iso {
    let lhs = Species::product(u, &Species::sum(summands.to_vec()));
    let rhs = Species::sum(summands.iter().map(|a| Species::product(u, a)).collect());
    let forward = NaturalMap::new("dist", lhs.clone(), rhs.clone(), |_, v| {
        let (w, tagged, x1, x2) = v.as_pair()?;
        let (i, a) = tagged.as_tagged()?;
        Ok(Structure::tagged(i, pair(w.clone(), a.clone(), x1, x2)))
    });
    let backward = NaturalMap::new("dist⁻¹", rhs, lhs, |_, v| {
        let (i, inner) = v.as_tagged()?;
        let (w, a, x1, x2) = inner.as_pair()?;
        Ok(pair(w.clone(), Structure::tagged(i, a.clone()), x1, x2))
    });
    Iso::new(forward, backward)
}

/// A summand of a sum that is either kept or unfolded into several summands.
pub enum Part {
    Keep(Species),
    Unfold(Iso, Vec<Species>),
}

/// Flattens `Σ parts` into the sum of all kept and unfolded summands, in order.
pub fn flatten(parts: Vec<Part>) -> Iso {
    let mut sources = Vec::new();
    let mut flat = Vec::new();
    let mut offsets = Vec::new();
    let mut routes: Vec<Option<Iso>> = Vec::new();
    for part in parts {
        offsets.push(flat.len());
        match part {
            Part::Keep(s) => {
                sources.push(s.clone());
                flat.push(s);
                routes.push(None);
            }
            Part::Unfold(iso, pieces) => {
                sources.push(iso.forward.source().clone());
                flat.extend(pieces);
                routes.push(Some(iso));
            }
        }
    }
    let lhs = Species::sum(sources);
    let rhs = Species::sum(flat.clone());
    let widths: Vec<usize> = offsets
        .iter()
        .enumerate()
        .map(|(i, o)| offsets.get(i + 1).copied().unwrap_or(flat.len()) - o)
        .collect();
    let (fo, fr) = (offsets.clone(), routes.clone());
    let forward = NaturalMap::new("unfold", lhs.clone(), rhs.clone(), move |x, v| {
        let (i, inner) = v.as_tagged()?;
        match fr
            .get(i)
            .ok_or_else(|| Error::malformed("a folded sum", x, v))?
        {
            None => Ok(Structure::tagged(fo[i], inner.clone())),
            Some(iso) => {
                let unfolded = iso.forward.apply(x, inner)?;
                let (j, w) = unfolded.as_tagged()?;
                Ok(Structure::tagged(fo[i] + j, w.clone()))
            }
        }
    });
    let backward = NaturalMap::new("fold", rhs, lhs, move |x, v| {
        let (m, inner) = v.as_tagged()?;
        let i = (0..offsets.len())
            .find(|&i| offsets[i] <= m && m < offsets[i] + widths[i])
            .ok_or_else(|| Error::malformed("an unfolded sum", x, v))?;
        match &routes[i] {
            None => Ok(Structure::tagged(i, inner.clone())),
            Some(iso) => {
                let folded = iso
                    .backward
                    .apply(x, &Structure::tagged(m - offsets[i], inner.clone()))?;
                Ok(Structure::tagged(i, folded))
            }
        }
    });
    Iso::new(forward, backward)
}

/// `Σ_i S_i → Σ_j S_{order[j]}`.
pub fn reorder(summands: &[Species], order: &[usize]) -> Iso {
    let lhs = Species::sum(summands.to_vec());
    let rhs = Species::sum(order.iter().map(|&i| summands[i].clone()).collect());
    let position: Vec<usize> = (0..summands.len())
        .map(|i| order.iter().position(|&o| o == i).expect("a permutation"))
        .collect();
    let order = order.to_vec();
    Iso::new(
        NaturalMap::new("reorder", lhs.clone(), rhs.clone(), move |_, v| {
            let (i, w) = v.as_tagged()?;
            Ok(Structure::tagged(position[i], w.clone()))
        }),
        NaturalMap::new("reorder⁻¹", rhs, lhs, move |_, v| {
            let (j, w) = v.as_tagged()?;
            Ok(Structure::tagged(order[j], w.clone()))
        }),
    )
}

/// `∂(∂S·T)·U ≅ (∂∂S·T)·U + (∂S·∂T)·U`, via `φ·id` and distributivity.
pub fn unfold_left(s: &Species, t: &Species, u: &Species) -> (Iso, Vec<Species>) {
    let ds = s.derivative();
    let phi = product_derivative(&ds, t);
    let pieces = vec![
        Species::product(&ds.derivative(), t),
        Species::product(&ds, &t.derivative()),
    ];
    let iso = Iso::product(&phi, &Iso::identity(u)).then(&distribute_left(&pieces, u));
    let targets = pieces.iter().map(|p| Species::product(p, u)).collect();
    (iso, targets)
}

/// `U·∂(∂S·T) ≅ U·(∂∂S·T) + U·(∂S·∂T)`, via `id·φ` and distributivity.
pub fn unfold_right(u: &Species, s: &Species, t: &Species) -> (Iso, Vec<Species>) {
    let ds = s.derivative();
    let phi = product_derivative(&ds, t);
    let pieces = vec![
        Species::product(&ds.derivative(), t),
        Species::product(&ds, &t.derivative()),
    ];
    let iso = Iso::product(&Iso::identity(u), &phi).then(&distribute_right(u, &pieces));
    let targets = pieces.iter().map(|p| Species::product(u, p)).collect();
    (iso, targets)
}

/// The three constituents of the pre-Lie isomorphism:
///
/// - `β1 = α⁻¹∘(ex·c)∘α : (∂∂S·T)·U → (∂∂S·U)·T`
/// - `β2 = α : (∂S·∂T)·U → ∂S·(∂T·U)`
/// - `β3 = α⁻¹ : ∂S·(∂U·T) → (∂S·∂U)·T`
pub fn pre_lie_constituents(s: &Species, t: &Species, u: &Species) -> [Iso; 3] {
    let ds = s.derivative();
    let dds = ds.derivative();
    let b1 = associator(&dds, t, u)
        .then(&Iso::product(&exchange(s), &commutator(t, u)))
        .then(&associator(&dds, u, t).inverse());
    let b2 = associator(&ds, &t.derivative(), u);
    let b3 = associator(&ds, &u.derivative(), t).inverse();
    [
        rename_iso(b1, "β1"),
        rename_iso(b2, "β2"),
        rename_iso(b3, "β3"),
    ]
}

fn rename_iso(iso: Iso, name: &str) -> Iso {
    Iso::new(
        iso.forward.renamed(name),
        iso.backward.renamed(format!("{name}⁻¹")),
    )
}

/// The pre-Lie isomorphism on the six-fold unfolded sums, summand by summand:
/// `(∂∂S·T)·U + (∂S·∂T)·U + ∂S·(∂U·T) → (∂∂S·U)·T + ∂S·(∂T·U) + (∂S·∂U)·T`.
pub fn pre_lie_iso_unfolded(s: &Species, t: &Species, u: &Species) -> Iso {
    rename_iso(Iso::sum(&pre_lie_constituents(s, t, u)), "β")
}

/// `β: (S★T)★U + S★(U★T) → S★(T★U) + (S★U)★T`.
pub fn pre_lie_iso(s: &Species, t: &Species, u: &Species) -> Iso {
    let ds = s.derivative();
    let (left_src, left_pieces) = unfold_left(s, t, u);
    let source = flatten(vec![
        Part::Unfold(left_src, left_pieces),
        Part::Keep(Species::product(&ds, &Species::product(&u.derivative(), t))),
    ]);
    let unfolded = pre_lie_iso_unfolded(s, t, u);
    // Constituent targets are ordered β1, β2, β3; the folded target lists
    // S★(T★U) (from β2) before the two halves of (S★U)★T (β1 and β3).
    let (right_tgt, right_pieces) = unfold_left(s, u, t);
    let q1 = Species::product(&ds, &Species::product(&t.derivative(), u));
    let mut constituent_targets = right_pieces.clone();
    constituent_targets.insert(1, q1.clone());
    let order = reorder(&constituent_targets, &[1, 0, 2]);
    let target = flatten(vec![Part::Keep(q1), Part::Unfold(right_tgt, right_pieces)]);
    rename_iso(
        source.then(&unfolded).then(&order).then(&target.inverse()),
        "β",
    )
}

/// The six constituents of the triangle isomorphism, each built as the
/// composite of `α`, `c`, `ex` and `γ1` it is defined by.
pub fn triangle_constituents(s: &Species, t: &Species, u: &Species) -> [Iso; 6] {
    let g1 = |a: &Species, b: &Species, c: &Species| -> Iso {
        let dda = a.derivative().derivative();
        let (db, dc) = (b.derivative(), c.derivative());
        associator(&dda, &db, &dc)
            .then(&Iso::product(&exchange(a), &commutator(&db, &dc)))
            .then(&associator(&dda, &dc, &db).inverse())
    };
    let d = |x: &Species| x.derivative();
    let dd = |x: &Species| x.derivative().derivative();
    let id = |x: &Species| Iso::identity(x);

    let gamma1 = g1(s, t, u);
    // c ∘ γ1[T,S,U] ∘ (c·id)
    let gamma2 = Iso::product(&commutator(&d(s), &dd(t)), &id(&d(u)))
        .then(&g1(t, s, u))
        .then(&commutator(&Species::product(&dd(t), &d(u)), &d(s)));
    // c ∘ γ1[S,U,T] ∘ c
    let gamma3 = commutator(&d(t), &Species::product(&dd(s), &d(u)))
        .then(&g1(s, u, t))
        .then(&commutator(&Species::product(&dd(s), &d(t)), &d(u)));
    // (id·c) ∘ c ∘ γ1[U,S,T] ∘ (c·id) ∘ c
    let gamma4 = commutator(&d(t), &Species::product(&d(s), &dd(u)))
        .then(&Iso::product(&commutator(&d(s), &dd(u)), &id(&d(t))))
        .then(&g1(u, s, t))
        .then(&commutator(&Species::product(&dd(u), &d(t)), &d(s)))
        .then(&Iso::product(&id(&d(s)), &commutator(&dd(u), &d(t))));
    // (id·c) ∘ c ∘ γ1[T,U,S]
    let gamma5 = g1(t, u, s)
        .then(&commutator(&Species::product(&dd(t), &d(s)), &d(u)))
        .then(&Iso::product(&id(&d(u)), &commutator(&dd(t), &d(s))));
    // c ∘ (id·c) ∘ c ∘ γ1[U,T,S] ∘ (c·id)
    let gamma6 = Iso::product(&commutator(&d(t), &dd(u)), &id(&d(s)))
        .then(&g1(u, t, s))
        .then(&commutator(&Species::product(&dd(u), &d(s)), &d(t)))
        .then(&Iso::product(&id(&d(t)), &commutator(&dd(u), &d(s))))
        .then(&commutator(&d(t), &Species::product(&d(s), &dd(u))));
    [
        rename_iso(gamma1, "γ1"),
        rename_iso(gamma2, "γ2"),
        rename_iso(gamma3, "γ3"),
        rename_iso(gamma4, "γ4"),
        rename_iso(gamma5, "γ5"),
        rename_iso(gamma6, "γ6"),
    ]
}

/// The triangle constituents written out directly on values, as an
/// independent cross-check of their composite definitions.
pub fn triangle_constituents_direct(s: &Species, t: &Species, u: &Species) -> [NaturalMap; 6] {
    let cons = triangle_constituents(s, t, u);
    let ex = |x: &Species| {
        let x = x.clone();
        move |set: &FiniteSet, v: &Structure| x.transport(&star_exchange(set), v)
    };
    let nested_left = |v: &Structure| -> Result<(
        Structure,
        Structure,
        Structure,
        FiniteSet,
        FiniteSet,
        FiniteSet,
    )> {
        let (fg, h, _, c) = v.as_pair()?;
        let (f, g, a, b) = fg.as_pair()?;
        Ok((
            f.clone(),
            g.clone(),
            h.clone(),
            a.clone(),
            b.clone(),
            c.clone(),
        ))
    };
    let nested_right = |v: &Structure| -> Result<(
        Structure,
        Structure,
        Structure,
        FiniteSet,
        FiniteSet,
        FiniteSet,
    )> {
        let (f, gh, a, _) = v.as_pair()?;
        let (g, h, b, c) = gh.as_pair()?;
        Ok((
            f.clone(),
            g.clone(),
            h.clone(),
            a.clone(),
            b.clone(),
            c.clone(),
        ))
    };
    let left =
        |l: Structure, m: Structure, r: Structure, a: &FiniteSet, b: &FiniteSet, c: &FiniteSet| {
            pair(pair(l, m, a, b), r, &a.union(b), c)
        };
    let right =
        |l: Structure, m: Structure, r: Structure, a: &FiniteSet, b: &FiniteSet, c: &FiniteSet| {
            pair(l, pair(m, r, b, c), a, &b.union(c))
        };
    let mk = |i: usize, f: Component| {
        NaturalMap::new(
            format!("γ{} (direct)", i + 1),
            cons[i].forward.source().clone(),
            cons[i].forward.target().clone(),
            f,
        )
    };
    let (exs, ext, exu) = (ex(s), ex(t), ex(u));
    let (ext2, exu2, exs2) = (ex(t), ex(u), ex(s));
    [
        mk(
            0,
            Box::new(move |_, v| {
                let (f, g, h, a, b, c) = nested_left(v)?;
                Ok(left(exs(&a, &f)?, h, g, &a, &c, &b))
            }),
        ),
        mk(
            1,
            Box::new(move |_, v| {
                let (f, g, h, a, b, c) = nested_left(v)?;
                Ok(right(f, ext(&b, &g)?, h, &a, &b, &c))
            }),
        ),
        mk(
            2,
            Box::new(move |_, v| {
                let (f, g, h, a, b, c) = nested_right(v)?;
                Ok(right(h, exs2(&b, &g)?, f, &c, &b, &a))
            }),
        ),
        mk(
            3,
            Box::new(move |_, v| {
                let (f, g, h, a, b, c) = nested_right(v)?;
                Ok(right(g, f, exu(&c, &h)?, &b, &a, &c))
            }),
        ),
        mk(
            4,
            Box::new(move |_, v| {
                let (f, g, h, a, b, c) = nested_left(v)?;
                Ok(right(g, h, ext2(&a, &f)?, &b, &c, &a))
            }),
        ),
        mk(
            5,
            Box::new(move |_, v| {
                let (f, g, h, a, b, c) = nested_left(v)?;
                Ok(left(h, exu2(&b, &g)?, f, &c, &b, &a))
            }),
        ),
    ]
}

/// The triangle isomorphism on the six-fold unfolded sums, constituent by
/// constituent (sources and targets in the order `γ1, ..., γ6`).
pub fn triangle_iso_unfolded(s: &Species, t: &Species, u: &Species) -> Iso {
    rename_iso(Iso::sum(&triangle_constituents(s, t, u)), "γ")
}

/// `γ: (S▲T)▲U + T▲(S▲U) + (T▲U)▲S → S▲(T▲U) + (S▲U)▲T + U▲(S▲T)`.
pub fn triangle_iso(s: &Species, t: &Species, u: &Species) -> Iso {
    // ∂(∂A·∂B)·∂C and ∂C·∂(∂A·∂B) unfold along φ for ∂A and ∂B.
    let unfold_l = |a: &Species, b: &Species, c: &Species| {
        let (da, db, dc) = (a.derivative(), b.derivative(), c.derivative());
        let phi = product_derivative(&da, &db);
        let pieces = vec![
            Species::product(&da.derivative(), &db),
            Species::product(&da, &db.derivative()),
        ];
        let iso = Iso::product(&phi, &Iso::identity(&dc)).then(&distribute_left(&pieces, &dc));
        let targets = pieces.iter().map(|p| Species::product(p, &dc)).collect();
        Part::Unfold(iso, targets)
    };
    let unfold_r = |c: &Species, a: &Species, b: &Species| {
        let (da, db, dc) = (a.derivative(), b.derivative(), c.derivative());
        let phi = product_derivative(&da, &db);
        let pieces = vec![
            Species::product(&da.derivative(), &db),
            Species::product(&da, &db.derivative()),
        ];
        let iso = Iso::product(&Iso::identity(&dc), &phi).then(&distribute_right(&dc, &pieces));
        let targets = pieces.iter().map(|p| Species::product(&dc, p)).collect();
        Part::Unfold(iso, targets)
    };
    let source = flatten(vec![
        unfold_l(s, t, u),
        unfold_r(t, s, u),
        unfold_l(t, u, s),
    ]);
    let target = flatten(vec![
        unfold_r(s, t, u),
        unfold_l(s, u, t),
        unfold_r(u, s, t),
    ]);
    // Constituent targets γ1..γ6 versus the flattened target order
    // [γ2, γ4, γ1, γ6, γ3, γ5].
    let cons = triangle_constituents(s, t, u);
    let targets: Vec<Species> = cons.iter().map(|c| c.forward.target().clone()).collect();
    let order = reorder(&targets, &[1, 3, 0, 5, 2, 4]);
    rename_iso(
        source
            .then(&triangle_iso_unfolded(s, t, u))
            .then(&order)
            .then(&target.inverse()),
        "γ",
    )
}

/// `λ★ = λ ∘ (ε1·id): E_1★S → S`.
pub fn pre_lie_left_unitor(s: &Species) -> Iso {
    rename_iso(
        Iso::product(&cardinality_derivative(1), &Iso::identity(s)).then(&left_unitor(s)),
        "λ★",
    )
}

/// `∂S·E_1 ≅ S•`: `(f, {x}) ↦ (f with *(X∖x) renamed to x, x)`.
pub fn pre_lie_right_pointing(s: &Species) -> Iso {
    let lhs = Species::product(&s.derivative(), &Species::cardinality(1));
    let rhs = s.pointing();
    let s1 = s.clone();
    let forward = NaturalMap::new("ι★", lhs.clone(), rhs.clone(), move |x, v| {
        let (f, point, rest, single) = v.as_pair()?;
        let p = match (point, single.as_slice()) {
            (Structure::Whole(w), [p]) if w == single => p.clone(),
            _ => return Err(Error::malformed("∂S·E1", x, v)),
        };
        let sigma = Bijection::renaming(&rest.with_star(), &rest.star(), &p)?;
        Ok(Structure::pointed(s1.transport(&sigma, f)?, p))
    });
    let s2 = s.clone();
    let backward = NaturalMap::new("ι★⁻¹", rhs, lhs, move |x, v| {
        let (f, p) = v.as_pointed()?;
        let rest = x.remove(p);
        let sigma = Bijection::renaming(x, p, &rest.star())?;
        let single = FiniteSet::singleton(p.clone());
        Ok(pair(
            s2.transport(&sigma, f)?,
            Structure::Whole(single.clone()),
            &rest,
            &single,
        ))
    });
    Iso::new(forward, backward)
}

/// The projection `π1: S• → S`.
pub fn forget_point(s: &Species) -> NaturalMap {
    NaturalMap::new("π1", s.pointing(), s.clone(), |_, v| {
        Ok(v.as_pointed()?.0.clone())
    })
}

/// `ρ★: S★E_1 → S`, `(f, {x}) ↦ f with the star renamed to x`.
///
/// This is natural but not invertible: `S★E_1 ≅ S•`, and `ρ★` is that
/// isomorphism followed by forgetting the point.
pub fn pre_lie_right_unit(s: &Species) -> NaturalMap {
    pre_lie_right_pointing(s)
        .forward
        .then(&forget_point(s))
        .renamed("ρ★")
}

/// `λ▲: E_2▲S → S•`, `({x,*{x}}, f) ↦ (f with *(X∖x) renamed to x, x)`.
pub fn triangle_left_unitor(s: &Species) -> Iso {
    let lhs = Species::product(&Species::cardinality(2).derivative(), &s.derivative());
    let rhs = s.pointing();
    let s1 = s.clone();
    let forward = NaturalMap::new("λ▲", lhs.clone(), rhs.clone(), move |x, v| {
        let (unit, f, single, rest) = v.as_pair()?;
        let p = match single.as_slice() {
            [p] if unit == &Structure::Whole(single.with_star()) => p.clone(),
            _ => return Err(Error::malformed("E2▲S", x, v)),
        };
        let sigma = Bijection::renaming(&rest.with_star(), &rest.star(), &p)?;
        Ok(Structure::pointed(s1.transport(&sigma, f)?, p))
    });
    let s2 = s.clone();
    let backward = NaturalMap::new("λ▲⁻¹", rhs, lhs, move |x, v| {
        let (f, p) = v.as_pointed()?;
        let rest = x.remove(p);
        let single = FiniteSet::singleton(p.clone());
        let sigma = Bijection::renaming(x, p, &rest.star())?;
        Ok(pair(
            Structure::Whole(single.with_star()),
            s2.transport(&sigma, f)?,
            &single,
            &rest,
        ))
    });
    Iso::new(forward, backward)
}

/// `κ▲ = λ▲ ∘ c: S▲E_2 → S•`.
pub fn triangle_right_unitor(s: &Species) -> Iso {
    let de2 = Species::cardinality(2).derivative();
    rename_iso(
        commutator(&s.derivative(), &de2).then(&triangle_left_unitor(s)),
        "κ▲",
    )
}

/// `δ: S• → E_1·∂S`, `(f, x) ↦ ({x}, f with x renamed to *(X∖x))`.
pub fn point_splitting(s: &Species) -> Iso {
    let lhs = s.pointing();
    let rhs = Species::product(&Species::cardinality(1), &s.derivative());
    let s1 = s.clone();
    let forward = NaturalMap::new("δ", lhs.clone(), rhs.clone(), move |x, v| {
        let (f, p) = v.as_pointed()?;
        let rest = x.remove(p);
        let single = FiniteSet::singleton(p.clone());
        let sigma = Bijection::renaming(x, p, &rest.star())?;
        Ok(pair(
            Structure::Whole(single.clone()),
            s1.transport(&sigma, f)?,
            &single,
            &rest,
        ))
    });
    let s2 = s.clone();
    let backward = NaturalMap::new("δ⁻¹", rhs, lhs, move |x, v| {
        let (unit, f, single, rest) = v.as_pair()?;
        let p: Label = match single.as_slice() {
            [p] if unit == &Structure::Whole(single.clone()) => p.clone(),
            _ => return Err(Error::malformed("E1·∂S", x, v)),
        };
        let sigma = Bijection::renaming(&rest.with_star(), &rest.star(), &p)?;
        Ok(Structure::pointed(s2.transport(&sigma, f)?, p))
    });
    Iso::new(forward, backward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Bounds;
    use crate::labels::atom_pool;

    fn set(names: &[&str]) -> FiniteSet {
        FiniteSet::atoms(names.iter().copied()).unwrap()
    }

    fn e(n: usize) -> Species {
        Species::cardinality(n)
    }

    fn nat() -> Bounds {
        Bounds::atoms(3, 3)
    }

    fn inv() -> Bounds {
        Bounds::atoms(4, 4)
    }

    #[test]
    fn associator_reassociates_the_split() {
        let (a, b, c) = (set(&["a"]), set(&["b"]), set(&["c"]));
        let v = pair(
            pair(
                Structure::Whole(a.clone()),
                Structure::Whole(b.clone()),
                &a,
                &b,
            ),
            Structure::Whole(c.clone()),
            &set(&["a", "b"]),
            &c,
        );
        let alpha = associator(&e(1), &e(1), &e(1));
        let out = alpha.forward.apply(&set(&["a", "b", "c"]), &v).unwrap();
        let (f, gh, x1, x2) = out.as_pair().unwrap();
        assert_eq!((x1, x2), (&a, &set(&["b", "c"])));
        assert_eq!(f, &Structure::Whole(a.clone()));
        assert_eq!(gh.as_pair().unwrap().2, &b);
        let r = alpha.check(&nat(), &Bounds::atoms(3, 3));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn table_maps_are_natural_isomorphisms() {
        let s = Species::sum(vec![e(1), e(2)]);
        let t = e(2);
        for iso in [
            commutator(&s, &t),
            left_unitor(&s),
            right_unitor(&s),
            exchange(&e(3)),
            exchange(&Species::product(&e(2), &e(1))),
            sum_derivative(&[s.clone(), t.clone()]),
            product_derivative(&s, &t),
            cardinality_derivative(2),
            cardinality_derivative(1),
        ] {
            let r = iso.check(&nat(), &inv());
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn substitution_units_are_natural_isomorphisms() {
        let s = Species::sum(vec![e(1), e(2), e(3)]);
        for iso in [substitution_left_unit(&s), substitution_right_unit(&s)] {
            let r = iso.check(&nat(), &inv());
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn exchange_swaps_the_stars() {
        let empty = FiniteSet::empty();
        let dde2 = e(2).derivative().derivative();
        let v = dde2.eval(&empty)[0].clone();
        let ex = exchange(&e(2));
        // E_2 on the two stars is the whole set either way.
        assert_eq!(ex.forward.apply(&empty, &v).unwrap(), v);
        let sigma = star_exchange(&empty);
        assert_eq!(sigma.apply(&empty.star()), Some(&empty.with_star().star()));
    }

    #[test]
    fn product_derivative_splits_by_star_position() {
        let x = set(&["a"]);
        let de = Species::product(&e(1), &e(1)).derivative();
        let phi = product_derivative(&e(1), &e(1));
        let tags: Vec<usize> = de
            .eval(&x)
            .iter()
            .map(|v| phi.forward.apply(&x, v).unwrap().as_tagged().unwrap().0)
            .collect();
        assert_eq!(tags.len(), 2);
        assert!(tags.contains(&0) && tags.contains(&1));
    }

    #[test]
    fn pre_lie_iso_is_invertible_and_natural() {
        let (s, t, u) = (e(2), e(1), Species::sum(vec![e(1), e(2)]));
        let r = pre_lie_iso(&s, &t, &u).check(&nat(), &Bounds::atoms(3, 3));
        assert!(r.passed(), "{r}");
        let [_, b2, _] = pre_lie_constituents(&s, &t, &u);
        let alpha = associator(&s.derivative(), &t.derivative(), &u);
        assert!(b2
            .forward
            .check_equal(&alpha.forward, "β2 = α", &Bounds::atoms(3, 3))
            .passed());
    }

    #[test]
    fn triangle_constituents_match_their_direct_formulas() {
        let (s, t, u) = (e(3), e(2), Species::sum(vec![e(1), e(2)]));
        let cons = triangle_constituents(&s, &t, &u);
        let direct = triangle_constituents_direct(&s, &t, &u);
        for (c, d) in cons.iter().zip(direct.iter()) {
            let r = c.forward.check_equal(d, "pointwise", &Bounds::atoms(3, 3));
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn triangle_iso_is_invertible_and_natural() {
        let s = Species::sum(vec![e(1), e(2)]);
        let r = triangle_iso(&s, &e(1), &e(2)).check(&Bounds::atoms(3, 2), &Bounds::atoms(3, 3));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn unitors_and_pointing() {
        let s = Species::sum(vec![e(2), e(3)]);
        for iso in [
            pre_lie_left_unitor(&s),
            pre_lie_right_pointing(&s),
            triangle_left_unitor(&s),
            triangle_right_unitor(&s),
            point_splitting(&s),
        ] {
            let r = iso.check(&nat(), &inv());
            assert!(r.passed(), "{r}");
        }
        assert!(pre_lie_right_unit(&s).check_naturality(&nat()).passed());
    }

    #[test]
    fn pre_lie_right_unit_is_not_injective() {
        // S★E_1 ≅ S•, which is strictly larger than S as soon as |X| ≥ 2.
        let rho = pre_lie_right_unit(&e(2));
        let r = rho.check_bijective(&Bounds::atoms(2, 2));
        assert!(!r.passed());
        let x = FiniteSet::new(atom_pool(2));
        assert_eq!(rho.source().count(&x), 2);
        assert_eq!(rho.target().count(&x), 1);
    }

    #[test]
    fn triangle_left_unitor_empty_at_empty_set() {
        let s = e(2);
        let lambda = triangle_left_unitor(&s);
        assert_eq!(lambda.forward.source().count(&FiniteSet::empty()), 0);
        // E_2▲S(X) = Σ_x ∂S(X∖x).
        for n in 0..4 {
            let x = FiniteSet::new(atom_pool(n));
            let expected: usize = x.iter().map(|p| s.derivative().count(&x.remove(p))).sum();
            assert_eq!(lambda.forward.source().count(&x), expected);
        }
    }

    #[test]
    fn point_splitting_matches_its_defining_composite() {
        let s = Species::sum(vec![e(2), e(3)]);
        let delta = point_splitting(&s);
        let composite = triangle_left_unitor(&s).inverse().then(&Iso::product(
            &cardinality_derivative(2),
            &Iso::identity(&s.derivative()),
        ));
        let r = delta.forward.check_equal(&composite.forward, "δ", &inv());
        assert!(r.passed(), "{r}");
    }
}
