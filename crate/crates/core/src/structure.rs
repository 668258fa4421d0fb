//! Structure values: the elements of `S(X)` for the species built here.

use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::labels::{FiniteSet, Label, Parser};

/// A labelled term used as the payload of model structures.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Leaf(Label),
    Node(Arc<str>, Vec<Term>),
}

impl Term {
    pub fn node(name: &str, children: Vec<Term>) -> Term {
        Term::Node(name.into(), children)
    }

    /// Replaces every leaf label through `rename`.
    pub fn relabel(&self, rename: &impl Fn(&Label) -> Result<Label>) -> Result<Term> {
        Ok(match self {
            Term::Leaf(l) => Term::Leaf(rename(l)?),
            Term::Node(name, children) => Term::Node(
                name.clone(),
                children
                    .iter()
                    .map(|c| c.relabel(rename))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn leaves(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Label>) {
        match self {
            Term::Leaf(l) => out.push(l.clone()),
            Term::Node(_, children) => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(l) => write!(f, "{l}"),
            Term::Node(name, children) => {
                write!(f, "{name}(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `S(X)`. Which variant appears is dictated by the species.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    /// The unique `E_n`-structure on `X`.
    Whole(FiniteSet),
    /// A product structure over the split `(X1, X2)`.
    Pair {
        left: Arc<Structure>,
        right: Arc<Structure>,
        split: (FiniteSet, FiniteSet),
    },
    /// An element of the `index`-th summand of a sum.
    Tagged { index: usize, value: Arc<Structure> },
    /// A substitution structure: an outer structure on the partition (a set
    /// of block labels) and one inner structure per block, in block order.
    Subst {
        partition: FiniteSet,
        outer: Arc<Structure>,
        inner: Arc<[Structure]>,
    },
    /// A structure with a chosen element of its underlying set.
    Pointed { base: Arc<Structure>, point: Label },
    /// A class `[(root, rep)]` with `rep` a structure on `X∖{root}`.
    Class { root: Label, rep: Arc<Structure> },
    /// A model-specific structure in canonical form.
    Model { tag: Arc<str>, term: Term },
}

impl Structure {
    pub fn pair(left: Structure, right: Structure, x1: FiniteSet, x2: FiniteSet) -> Structure {
        Structure::Pair {
            left: Arc::new(left),
            right: Arc::new(right),
            split: (x1, x2),
        }
    }

    pub fn tagged(index: usize, value: Structure) -> Structure {
        Structure::Tagged {
            index,
            value: Arc::new(value),
        }
    }

    pub fn pointed(base: Structure, point: Label) -> Structure {
        Structure::Pointed {
            base: Arc::new(base),
            point,
        }
    }

    pub fn class(root: Label, rep: Structure) -> Structure {
        Structure::Class {
            root,
            rep: Arc::new(rep),
        }
    }

    pub fn model(tag: &str, term: Term) -> Structure {
        Structure::Model {
            tag: tag.into(),
            term,
        }
    }

    pub fn as_pair(&self) -> Result<(&Structure, &Structure, &FiniteSet, &FiniteSet)> {
        match self {
            Structure::Pair { left, right, split } => Ok((left, right, &split.0, &split.1)),
            other => Err(Error::malformed("a product", "its split", other)),
        }
    }

    pub fn as_tagged(&self) -> Result<(usize, &Structure)> {
        match self {
            Structure::Tagged { index, value } => Ok((*index, value)),
            other => Err(Error::malformed("a sum", "its summand", other)),
        }
    }

    pub fn as_pointed(&self) -> Result<(&Structure, &Label)> {
        match self {
            Structure::Pointed { base, point } => Ok((base, point)),
            other => Err(Error::malformed("a pointing", "its point", other)),
        }
    }

    pub fn as_class(&self) -> Result<(&Label, &Structure)> {
        match self {
            Structure::Class { root, rep } => Ok((root, rep)),
            other => Err(Error::malformed("a quotient", "its class", other)),
        }
    }

    pub fn as_model(&self, expected: &str) -> Result<&Term> {
        match self {
            Structure::Model { tag, term } if &**tag == expected => Ok(term),
            other => Err(Error::malformed(expected, "its model", other)),
        }
    }

    /// A short stable identifier: a hash of the canonical rendering.
    pub fn content_id(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

impl Structure {
    /// Reads back the text produced by `Display`. Substitution structures are
    /// not supported.
    pub fn parse(text: &str) -> Result<Structure> {
        let mut p = Parser::new(text);
        let s = structure(&mut p)?;
        p.finish()?;
        Ok(s)
    }

    /// Renames every label through `rename`. Sets are re-sorted; model terms
    /// keep their shape.
    pub fn relabel(&self, rename: &impl Fn(&Label) -> Result<Label>) -> Result<Structure> {
        let set = |x: &FiniteSet| -> Result<FiniteSet> {
            Ok(FiniteSet::new(
                x.iter().map(rename).collect::<Result<Vec<_>>>()?,
            ))
        };
        Ok(match self {
            Structure::Whole(x) => Structure::Whole(set(x)?),
            Structure::Pair { left, right, split } => Structure::pair(
                left.relabel(rename)?,
                right.relabel(rename)?,
                set(&split.0)?,
                set(&split.1)?,
            ),
            Structure::Tagged { index, value } => Structure::tagged(*index, value.relabel(rename)?),
            Structure::Subst {
                partition,
                outer,
                inner,
            } => {
                // Blocks keep their order: renaming is monotone on blocks only
                // when it is on labels, so re-sort alongside the inner parts.
                let mut moved = partition
                    .iter()
                    .zip(inner.iter())
                    .map(|(b, g)| Ok((rename(b)?, g.relabel(rename)?)))
                    .collect::<Result<Vec<_>>>()?;
                moved.sort_by(|a, b| a.0.cmp(&b.0));
                Structure::Subst {
                    partition: FiniteSet::new(moved.iter().map(|(b, _)| b.clone())),
                    outer: Arc::new(outer.relabel(rename)?),
                    inner: moved.into_iter().map(|(_, g)| g).collect(),
                }
            }
            Structure::Pointed { base, point } => {
                Structure::pointed(base.relabel(rename)?, rename(point)?)
            }
            Structure::Class { root, rep } => Structure::class(rename(root)?, rep.relabel(rename)?),
            Structure::Model { tag, term } => Structure::Model {
                tag: tag.clone(),
                term: term.relabel(rename)?,
            },
        })
    }
}

fn word(p: &mut Parser<'_>) -> String {
    let start = p.pos;
    while matches!(p.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_' || b == b'-') {
        p.pos += 1;
    }
    p.text[start..p.pos].to_string()
}

fn literal(p: &mut Parser<'_>, lit: &str) -> Result<()> {
    if p.text[p.pos..].starts_with(lit) {
        p.pos += lit.len();
        Ok(())
    } else {
        Err(p.error(format!("expected {lit:?}")))
    }
}

fn structure(p: &mut Parser<'_>) -> Result<Structure> {
    match p.peek() {
        Some(b'{') => Ok(Structure::Whole(p.set()?)),
        Some(b'[') => {
            p.pos += 1;
            let root = p.label()?;
            literal(p, ": ")?;
            let rep = structure(p)?;
            p.expect(b']')?;
            Ok(Structure::class(root, rep))
        }
        Some(b'(') => {
            p.pos += 1;
            let first = structure(p)?;
            if p.text[p.pos..].starts_with(" @ ") {
                p.pos += 3;
                let point = p.label()?;
                p.expect(b')')?;
                return Ok(Structure::pointed(first, point));
            }
            literal(p, ", ")?;
            let second = structure(p)?;
            literal(p, ")[")?;
            let x1 = p.set()?;
            p.expect(b'|')?;
            let x2 = p.set()?;
            p.expect(b']')?;
            Ok(Structure::pair(first, second, x1, x2))
        }
        _ => {
            let start = p.pos;
            let head = word(p);
            if head.is_empty() {
                return Err(p.error("expected a structure"));
            }
            match p.peek() {
                Some(b':') => {
                    p.pos += 1;
                    Ok(Structure::model(&head, term(p)?))
                }
                Some(b'(')
                    if head.starts_with("in")
                        && head[2..].bytes().all(|b| b.is_ascii_digit())
                        && head.len() > 2 =>
                {
                    let index = head[2..]
                        .parse()
                        .map_err(|_| p.error("summand index out of range"))?;
                    p.pos += 1;
                    let value = structure(p)?;
                    p.expect(b')')?;
                    Ok(Structure::tagged(index, value))
                }
                _ => {
                    p.pos = start;
                    Err(p.error("expected a structure"))
                }
            }
        }
    }
}

fn term(p: &mut Parser<'_>) -> Result<Term> {
    if matches!(p.peek(), Some(b'*') | Some(b'#')) {
        return Ok(Term::Leaf(p.label()?));
    }
    let start = p.pos;
    let head = word(p);
    if p.peek() != Some(b'(') {
        p.pos = start;
        return Ok(Term::Leaf(p.label()?));
    }
    if head.is_empty() {
        return Err(p.error("expected a term"));
    }
    p.pos += 1;
    let mut children = Vec::new();
    if p.peek() == Some(b')') {
        p.pos += 1;
        return Ok(Term::node(&head, children));
    }
    loop {
        children.push(term(p)?);
        match p.peek() {
            Some(b' ') => p.pos += 1,
            Some(b')') => {
                p.pos += 1;
                return Ok(Term::node(&head, children));
            }
            _ => return Err(p.error("expected ' ' or ')'")),
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::Whole(x) => write!(f, "{x}"),
            Structure::Pair { left, right, split } => {
                write!(f, "({left}, {right})[{}|{}]", split.0, split.1)
            }
            Structure::Tagged { index, value } => write!(f, "in{index}({value})"),
            Structure::Subst {
                partition,
                outer,
                inner,
            } => {
                write!(f, "subst({outer}")?;
                for (block, g) in partition.iter().zip(inner.iter()) {
                    write!(f, "; {block}: {g}")?;
                }
                f.write_str(")")
            }
            Structure::Pointed { base, point } => write!(f, "({base} @ {point})"),
            Structure::Class { root, rep } => write!(f, "[{root}: {rep}]"),
            Structure::Model { tag, term } => write!(f, "{tag}:{term}"),
        }
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_injective_on_small_examples() {
        let a = Label::atom("a").unwrap();
        let x = FiniteSet::singleton(a.clone());
        let w = Structure::Whole(x.clone());
        let p = Structure::pair(
            w.clone(),
            Structure::Whole(FiniteSet::empty()),
            x.clone(),
            FiniteSet::empty(),
        );
        let q = Structure::pair(
            Structure::Whole(FiniteSet::empty()),
            w.clone(),
            FiniteSet::empty(),
            x.clone(),
        );
        assert_ne!(p.to_string(), q.to_string());
        assert_ne!(p.content_id(), q.content_id());
        assert_eq!(p.content_id().len(), 16);
        let m = Structure::model("cyc", Term::node("cyc", vec![Term::Leaf(a)]));
        assert_eq!(m.to_string(), "cyc:cyc(a)");
        for v in [w, p, q, m] {
            assert_eq!(Structure::parse(&v.to_string()).unwrap(), v);
        }
    }
}
