//! Labels, finite sets of labels, bijections and decompositions.
//!
//! Besides plain atoms there are two derived kinds of label. `Star(X)` is the
//! distinguished element added by the derivative; it carries its base set, so
//! two stars agree exactly when their bases do. `Block(B)` names a block of a
//! partition when the partition itself is used as a set of labels.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A label. The derived order puts atoms first, then stars, then blocks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Atom(Arc<str>),
    Star(FiniteSet),
    Block(FiniteSet),
}

impl Label {
    pub fn atom(name: &str) -> Result<Label> {
        let ok = !name.is_empty()
            && name
                .bytes()
                .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_');
        if ok {
            Ok(Label::Atom(name.into()))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    /// The distinguished element of `base`. It can never belong to `base`:
    /// a finite value cannot contain itself.
    pub fn star(base: &FiniteSet) -> Label {
        Label::Star(base.clone())
    }

    pub fn block(block: &FiniteSet) -> Result<Label> {
        if block.is_empty() {
            return Err(Error::EmptyBlock);
        }
        Ok(Label::Block(block.clone()))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Label::Atom(_))
    }

    pub fn parse(text: &str) -> Result<Label> {
        let mut p = Parser::new(text);
        let label = p.label()?;
        p.finish()?;
        Ok(label)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(name) => f.write_str(name),
            Label::Star(base) => write!(f, "*{base}"),
            Label::Block(block) => write!(f, "#{block}"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The distinguished element `*X` of a set.
pub fn star_of(set: &FiniteSet) -> Label {
    Label::star(set)
}

/// A finite set of labels, stored sorted and without duplicates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FiniteSet(Arc<[Label]>);

impl FiniteSet {
    pub fn empty() -> FiniteSet {
        FiniteSet::default()
    }

    pub fn new(labels: impl IntoIterator<Item = Label>) -> FiniteSet {
        let mut v: Vec<Label> = labels.into_iter().collect();
        v.sort();
        v.dedup();
        FiniteSet(v.into())
    }

    pub fn singleton(label: Label) -> FiniteSet {
        FiniteSet(vec![label].into())
    }

    /// A set of atoms from their names.
    pub fn atoms<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<FiniteSet> {
        let labels = names
            .into_iter()
            .map(|n| Label::atom(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteSet::new(labels))
    }

    pub fn parse(text: &str) -> Result<FiniteSet> {
        let mut p = Parser::new(text);
        let set = p.set()?;
        p.finish()?;
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Label> {
        self.0.iter()
    }

    pub fn min(&self) -> Option<&Label> {
        self.0.first()
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.0.binary_search(label).ok()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.index_of(label).is_some()
    }

    pub fn insert(&self, label: Label) -> FiniteSet {
        if self.contains(&label) {
            return self.clone();
        }
        FiniteSet::new(self.iter().cloned().chain(std::iter::once(label)))
    }

    pub fn remove(&self, label: &Label) -> FiniteSet {
        if !self.contains(label) {
            return self.clone();
        }
        FiniteSet(self.iter().filter(|l| *l != label).cloned().collect())
    }

    pub fn union(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet::new(self.iter().chain(other.iter()).cloned())
    }

    pub fn difference(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet(
            self.iter()
                .filter(|l| !other.contains(l))
                .cloned()
                .collect(),
        )
    }

    pub fn intersection(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet(self.iter().filter(|l| other.contains(l)).cloned().collect())
    }

    pub fn is_disjoint(&self, other: &FiniteSet) -> bool {
        self.iter().all(|l| !other.contains(l))
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.iter().all(|l| other.contains(l))
    }

    /// `*X`.
    pub fn star(&self) -> Label {
        Label::star(self)
    }

    /// `X ∪ {*X}`.
    pub fn with_star(&self) -> FiniteSet {
        self.insert(self.star())
    }

    /// Every subset, in the order of the bitmask that selects it.
    pub fn subsets(&self) -> Vec<FiniteSet> {
        let n = self.len();
        (0u64..(1u64 << n))
            .map(|mask| {
                FiniteSet(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.0[i].clone())
                        .collect(),
                )
            })
            .collect()
    }

    /// Subsets of size at most `max`, ordered by size and then lexicographically.
    pub fn subsets_up_to(&self, max: usize) -> Vec<FiniteSet> {
        let mut out = Vec::new();
        for k in 0..=max.min(self.len()) {
            for combo in self.iter().cloned().combinations(k) {
                out.push(FiniteSet(combo.into()));
            }
        }
        out
    }
}

impl FromIterator<Label> for FiniteSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        FiniteSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a FiniteSet {
    type Item = &'a Label;
    type IntoIter = std::slice::Iter<'a, Label>;
    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A bijection `σ: domain → codomain`.
///
/// Species act contravariantly: transporting along `σ: Y → X` turns a structure
/// on `X` into one on `Y`, relabelling each `l ∈ X` by `σ⁻¹(l)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bijection {
    domain: FiniteSet,
    codomain: FiniteSet,
    // images[i] = σ(domain[i]); preimages[j] = σ⁻¹(codomain[j])
    images: Arc<[Label]>,
    preimages: Arc<[Label]>,
}

impl Bijection {
    /// Builds a bijection from `(y, σ(y))` pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Label, Label)>) -> Result<Bijection> {
        let mut pairs: Vec<(Label, Label)> = pairs.into_iter().collect();
        pairs.sort();
        let domain = FiniteSet::new(pairs.iter().map(|p| p.0.clone()));
        let codomain = FiniteSet::new(pairs.iter().map(|p| p.1.clone()));
        if domain.len() != pairs.len() || codomain.len() != pairs.len() {
            return Err(Error::InvalidBijection(format!(
                "pairs {:?} are not one-to-one",
                pairs
            )));
        }
        let images: Arc<[Label]> = pairs.iter().map(|p| p.1.clone()).collect();
        let mut preimages = vec![None; codomain.len()];
        for (y, x) in &pairs {
            preimages[codomain.index_of(x).expect("image is in codomain")] = Some(y.clone());
        }
        let preimages: Arc<[Label]> = preimages.into_iter().map(|p| p.expect("total")).collect();
        Ok(Bijection {
            domain,
            codomain,
            images,
            preimages,
        })
    }

    pub fn identity(set: &FiniteSet) -> Bijection {
        Bijection {
            domain: set.clone(),
            codomain: set.clone(),
            images: set.0.clone(),
            preimages: set.0.clone(),
        }
    }

    /// The bijection `X∖{from} ∪ {to} → X` that renames `from` to `to`,
    /// i.e. sends `to` to `from` and fixes everything else.
    pub fn renaming(target: &FiniteSet, from: &Label, to: &Label) -> Result<Bijection> {
        if !target.contains(from) {
            return Err(Error::NotAnElement {
                label: from.to_string(),
                set: target.to_string(),
            });
        }
        if to != from && target.contains(to) {
            return Err(Error::precondition(format!(
                "cannot rename {from} to {to}: {to} already occurs in {target}"
            )));
        }
        Bijection::from_pairs(target.iter().map(|l| {
            if l == from {
                (to.clone(), l.clone())
            } else {
                (l.clone(), l.clone())
            }
        }))
    }

    /// The bijection `X → X` exchanging `x` and `y`.
    pub fn exchange(set: &FiniteSet, x: &Label, y: &Label) -> Result<Bijection> {
        for l in [x, y] {
            if !set.contains(l) {
                return Err(Error::NotAnElement {
                    label: l.to_string(),
                    set: set.to_string(),
                });
            }
        }
        Bijection::from_pairs(set.iter().map(|l| {
            let image = if l == x {
                y.clone()
            } else if l == y {
                x.clone()
            } else {
                l.clone()
            };
            (l.clone(), image)
        }))
    }

    pub fn domain(&self) -> &FiniteSet {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSet {
        &self.codomain
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.images[..] == self.domain.0[..]
    }

    pub fn apply(&self, y: &Label) -> Option<&Label> {
        self.domain.index_of(y).map(|i| &self.images[i])
    }

    pub fn preimage(&self, x: &Label) -> Option<&Label> {
        self.codomain.index_of(x).map(|j| &self.preimages[j])
    }

    pub(crate) fn preimage_or_err(&self, x: &Label) -> Result<Label> {
        self.preimage(x)
            .cloned()
            .ok_or_else(|| Error::NotAnElement {
                label: x.to_string(),
                set: self.codomain.to_string(),
            })
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Label, &Label)> {
        self.domain.iter().zip(self.images.iter())
    }

    pub fn inverse(&self) -> Bijection {
        Bijection {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            images: self.preimages.clone(),
            preimages: self.images.clone(),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Bijection) -> Result<Bijection> {
        if inner.codomain != self.domain {
            return Err(Error::InvalidBijection(format!(
                "cannot compose: {} is not {}",
                inner.codomain, self.domain
            )));
        }
        Bijection::from_pairs(
            inner
                .pairs()
                .map(|(z, y)| (z.clone(), self.apply(y).expect("in domain").clone())),
        )
    }

    /// The extension `Y ∪ {*Y} → X ∪ {*X}` sending `*Y` to `*X`.
    pub fn partial_extension(&self) -> Bijection {
        let mut pairs: Vec<(Label, Label)> =
            self.pairs().map(|(a, b)| (a.clone(), b.clone())).collect();
        pairs.push((self.domain.star(), self.codomain.star()));
        Bijection::from_pairs(pairs).expect("stars are fresh on both sides")
    }

    /// The corestriction `σ⁻¹(Y) → Y`.
    pub fn restrict_corestrict(&self, part: &FiniteSet) -> Result<Bijection> {
        if !part.is_subset(&self.codomain) {
            return Err(Error::NotASubset(
                part.to_string(),
                self.codomain.to_string(),
            ));
        }
        if part == &self.codomain {
            return Ok(self.clone());
        }
        Bijection::from_pairs(
            part.iter()
                .map(|x| (self.preimage(x).expect("subset").clone(), x.clone())),
        )
    }

    /// The union of two bijections with disjoint domains and codomains.
    pub fn disjoint_union(&self, other: &Bijection) -> Result<Bijection> {
        if !self.domain.is_disjoint(&other.domain) || !self.codomain.is_disjoint(&other.codomain) {
            return Err(Error::InvalidBijection(format!(
                "cannot join {self:?} and {other:?}: they overlap"
            )));
        }
        Bijection::from_pairs(
            self.pairs()
                .chain(other.pairs())
                .map(|(a, b)| (a.clone(), b.clone())),
        )
    }
}

impl fmt::Debug for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (y, x)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{y}->{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The corestriction `σ⁻¹(Y) → Y`.
pub fn restrict_corestrict(sigma: &Bijection, part: &FiniteSet) -> Result<Bijection> {
    sigma.restrict_corestrict(part)
}

/// The `∂`-extension of a bijection.
pub fn partial_extension(sigma: &Bijection) -> Bijection {
    sigma.partial_extension()
}

/// All bijections `Y → X`, in lexicographic order of their image lists.
pub fn all_bijections(domain: &FiniteSet, codomain: &FiniteSet) -> Result<Vec<Bijection>> {
    if domain.len() != codomain.len() {
        return Err(Error::InvalidBijection(format!(
            "{domain} and {codomain} have different sizes"
        )));
    }
    Ok(codomain
        .iter()
        .cloned()
        .permutations(codomain.len())
        .map(|images| {
            Bijection::from_pairs(domain.iter().cloned().zip(images))
                .expect("a permutation is one-to-one")
        })
        .collect())
}

/// An ordered family of pairwise disjoint parts covering `whole`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub parts: Vec<FiniteSet>,
    pub whole: FiniteSet,
}

/// All `2^|X|` ordered pairs `(X1, X2)` with `X1 ⊔ X2 = X`, empty parts included.
pub fn enumerate_binary_decompositions(set: &FiniteSet) -> Vec<Decomposition> {
    set.subsets()
        .into_iter()
        .map(|left| {
            let right = set.difference(&left);
            Decomposition {
                parts: vec![left, right],
                whole: set.clone(),
            }
        })
        .collect()
}

/// All partitions of `X` into nonempty blocks, in restricted-growth order.
pub fn enumerate_partitions(set: &FiniteSet) -> Vec<Vec<FiniteSet>> {
    fn grow(n: usize, prefix: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=blocks {
            prefix.push(b);
            grow(n, prefix, blocks.max(b + 1), out);
            prefix.pop();
        }
    }
    let mut codes = Vec::new();
    grow(set.len(), &mut Vec::new(), 0, &mut codes);
    codes
        .into_iter()
        .map(|code| {
            let count = code.iter().copied().max().map_or(0, |m| m + 1);
            (0..count)
                .map(|b| {
                    FiniteSet::new(
                        set.iter()
                            .zip(&code)
                            .filter(|(_, c)| **c == b)
                            .map(|(l, _)| l.clone()),
                    )
                })
                .collect()
        })
        .collect()
}

/// A partition viewed as a set of block labels.
pub fn partition_as_set(blocks: &[FiniteSet]) -> Result<FiniteSet> {
    blocks
        .iter()
        .map(Label::block)
        .collect::<Result<Vec<_>>>()
        .map(FiniteSet::new)
}

/// Atoms `a, b, c, ...`, then `a1, b1, ...` once the alphabet runs out.
pub fn atom_pool(n: usize) -> Vec<Label> {
    (0..n)
        .map(|i| {
            let letter = (b'a' + (i % 26) as u8) as char;
            let name = if i < 26 {
                letter.to_string()
            } else {
                format!("{letter}{}", i / 26)
            };
            Label::atom(&name).expect("generated names are valid")
        })
        .collect()
}

pub(crate) struct Parser<'a> {
    pub(crate) text: &'a str,
    pub(crate) pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            message: format!(
                "{} at column {} of {:?}",
                message.into(),
                self.pos + 1,
                self.text
            ),
        }
    }

    pub(crate) fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    pub(crate) fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    pub(crate) fn label(&mut self) -> Result<Label> {
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(Label::star(&self.set()?))
            }
            Some(b'#') => {
                self.pos += 1;
                let block = self.set()?;
                Label::block(&block).map_err(|e| self.error(e.to_string()))
            }
            _ => {
                let start = self.pos;
                while matches!(self.peek(), Some(b) if b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
                {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.error("expected a label"));
                }
                Label::atom(&self.text[start..self.pos])
            }
        }
    }

    pub(crate) fn set(&mut self) -> Result<FiniteSet> {
        self.expect(b'{')?;
        let mut labels = Vec::new();
        if self.peek() == Some(b'}') {
            self.pos += 1;
            return Ok(FiniteSet::empty());
        }
        loop {
            labels.push(self.label()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or '}'")),
            }
        }
        let set = FiniteSet::new(labels.iter().cloned());
        if set.len() != labels.len() || set.as_slice() != labels.as_slice() {
            return Err(self.error("set elements must be sorted and distinct"));
        }
        Ok(set)
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(name: &str) -> Label {
        Label::atom(name).unwrap()
    }

    fn set(names: &[&str]) -> FiniteSet {
        FiniteSet::atoms(names.iter().copied()).unwrap()
    }

    #[test]
    fn star_is_fresh_and_deterministic() {
        let x = set(&["a"]);
        assert_eq!(star_of(&x), Label::Star(x.clone()));
        assert!(!x.contains(&star_of(&x)));
        let empty = FiniteSet::empty();
        assert!(!empty.contains(&star_of(&empty)));
        let nested = x.with_star();
        assert_ne!(star_of(&nested), star_of(&x));
        assert!(!nested.contains(&star_of(&nested)));
    }

    #[test]
    fn label_order_puts_atoms_before_stars_before_blocks() {
        let s = set(&["a"]);
        let atom = a("zzz");
        let star = Label::star(&s);
        let block = Label::block(&s).unwrap();
        assert!(atom < star && star < block);
        assert!(a("a") < a("b"));
        assert!(Label::star(&FiniteSet::empty()) < star);
    }

    #[test]
    fn invalid_atoms_are_rejected() {
        assert!(Label::atom("").is_err());
        assert!(Label::atom("A").is_err());
        assert!(Label::atom("a-b").is_err());
        assert!(Label::block(&FiniteSet::empty()).is_err());
    }

    #[test]
    fn partial_extension_examples() {
        let x = set(&["a"]);
        let id = Bijection::identity(&x);
        assert_eq!(id.partial_extension(), Bijection::identity(&x.with_star()));
        let sigma = Bijection::from_pairs([(a("b"), a("a"))]).unwrap();
        let plus = sigma.partial_extension();
        assert_eq!(plus.apply(&a("b")), Some(&a("a")));
        assert_eq!(
            plus.apply(&Label::star(&set(&["b"]))),
            Some(&Label::star(&set(&["a"])))
        );
    }

    #[test]
    fn partial_extension_is_functorial_on_small_sets() {
        let sets = [set(&["a", "b"]), set(&["b", "c"]), set(&["a", "c"])];
        for x in &sets {
            for y in &sets {
                for z in &sets {
                    for s in all_bijections(y, x).unwrap() {
                        for t in all_bijections(z, y).unwrap() {
                            let lhs = s.compose(&t).unwrap().partial_extension();
                            let rhs = s
                                .partial_extension()
                                .compose(&t.partial_extension())
                                .unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn corestriction_examples() {
        let ab = set(&["a", "b"]);
        let id = Bijection::identity(&ab);
        assert_eq!(
            id.restrict_corestrict(&set(&["a"])).unwrap(),
            Bijection::identity(&set(&["a"]))
        );
        let sigma = Bijection::from_pairs([(a("x"), a("b")), (a("y"), a("a"))]).unwrap();
        let r = sigma.restrict_corestrict(&set(&["a"])).unwrap();
        assert_eq!(r.domain(), &set(&["y"]));
        assert_eq!(r.apply(&a("y")), Some(&a("a")));
        assert_eq!(sigma.restrict_corestrict(&ab).unwrap(), sigma);
        assert!(sigma.restrict_corestrict(&set(&["c"])).is_err());
    }

    #[test]
    fn binary_decompositions() {
        let empty = enumerate_binary_decompositions(&FiniteSet::empty());
        assert_eq!(empty.len(), 1);
        assert!(empty[0].parts.iter().all(|p| p.is_empty()));
        let one = enumerate_binary_decompositions(&set(&["a"]));
        assert_eq!(
            one.iter().map(|d| d.parts.clone()).collect::<Vec<_>>(),
            vec![
                vec![FiniteSet::empty(), set(&["a"])],
                vec![set(&["a"]), FiniteSet::empty()]
            ]
        );
        for n in 0..5 {
            let x = FiniteSet::new(atom_pool(n));
            let ds = enumerate_binary_decompositions(&x);
            assert_eq!(ds.len(), 1 << n);
            for d in ds {
                assert!(d.parts[0].is_disjoint(&d.parts[1]));
                assert_eq!(d.parts[0].union(&d.parts[1]), x);
            }
        }
    }

    fn bell(n: usize) -> usize {
        // Bell triangle.
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for v in &row {
                let last = *next.last().unwrap();
                next.push(last + v);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn partitions_match_bell_numbers() {
        assert_eq!(enumerate_partitions(&set(&["a"])), vec![vec![set(&["a"])]]);
        assert_eq!(
            enumerate_partitions(&set(&["a", "b"])),
            vec![vec![set(&["a", "b"])], vec![set(&["a"]), set(&["b"])]]
        );
        for n in 0..7 {
            let x = FiniteSet::new(atom_pool(n));
            let parts = enumerate_partitions(&x);
            assert_eq!(parts.len(), bell(n), "n = {n}");
            for p in parts {
                assert!(p.iter().all(|b| !b.is_empty()));
                assert_eq!(p.iter().map(|b| b.len()).sum::<usize>(), n);
                assert_eq!(p.iter().fold(FiniteSet::empty(), |acc, b| acc.union(b)), x);
            }
        }
    }

    #[test]
    fn bijection_counts() {
        let one = set(&["a"]);
        assert_eq!(
            all_bijections(&one, &one).unwrap(),
            vec![Bijection::identity(&one)]
        );
        assert_eq!(
            all_bijections(&set(&["a", "b"]), &set(&["c", "d"]))
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            all_bijections(&set(&["a", "b", "c"]), &set(&["a", "b", "c"]))
                .unwrap()
                .len(),
            6
        );
        assert!(all_bijections(&one, &set(&["a", "b"])).is_err());
    }

    #[test]
    fn renaming_and_exchange() {
        let x = set(&["a", "b"]);
        let r = Bijection::renaming(&x, &a("a"), &a("c")).unwrap();
        assert_eq!(r.domain(), &set(&["b", "c"]));
        assert_eq!(r.apply(&a("c")), Some(&a("a")));
        assert!(Bijection::renaming(&x, &a("a"), &a("b")).is_err());
        assert!(Bijection::renaming(&x, &a("a"), &a("a"))
            .unwrap()
            .is_identity());
        let e = Bijection::exchange(&x, &a("a"), &a("b")).unwrap();
        assert_eq!(e.compose(&e).unwrap(), Bijection::identity(&x));
    }

    #[test]
    fn rendering_round_trips() {
        let x = set(&["a", "b"]);
        let nested = FiniteSet::new([a("c"), Label::star(&x), Label::block(&x).unwrap()]);
        let text = nested.to_string();
        assert_eq!(text, "{c,*{a,b},#{a,b}}");
        assert_eq!(FiniteSet::parse(&text).unwrap(), nested);
        assert_eq!(
            Label::parse("*{}").unwrap(),
            Label::star(&FiniteSet::empty())
        );
        assert!(FiniteSet::parse("{b,a}").is_err());
        assert!(Label::parse("#{}").is_err());
        assert!(Label::parse("a b").is_err());
    }
}
