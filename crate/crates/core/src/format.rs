//! A line-oriented text format for finite presentations.
//!
//! A file tabulates one presentation over every subset of its atom list of
//! size at most `max_size`: the carrier on each such set, the transport along
//! generator bijections (adjacent transpositions of each set and renamings of
//! one atom to another), and the operation tables of its kind. Structures are
//! referred to by content ids; a dictionary at the top of the file maps each
//! id back to the readable structure.
//!
//! ```text
//! cyclops-presentation 1
//! kind entries-only
//! name cyclic-orders
//! max_size 3
//! atoms a b c
//! structure 5b0d3c7e1e3a4f2c cyc:cyc(a b)
//! carrier {a,b} 5b0d3c7e1e3a4f2c
//! unit {a,b} 5b0d3c7e1e3a4f2c
//! compose {a,b} 5b0d3c7e1e3a4f2c a {a,c} ... c -> ...
//! swap {a,b} 0 5b0d3c7e1e3a4f2c -> 5b0d3c7e1e3a4f2c
//! rename {a,b} a c 5b0d3c7e1e3a4f2c -> ...
//! ```
//!
//! Loading a file rebuilds a presentation whose carrier is a tabulated
//! species. On sets that are not listed (sets containing stars, say) the
//! species is defined by relabelling the listed set of the first `n` atoms
//! along the order-preserving bijection, and operations there are computed
//! by moving their arguments onto listed sets, so that derivatives and the
//! algebraic translations can be run on loaded data. Parse errors
//! ([`Error::Parse`]) and semantic errors ([`Error::Semantic`]) are kept apart.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use crate::algebraic::{AlgebraicEntriesOnly, AlgebraicExchangeableOutput, AlgebraicOperad};
use crate::bounds::Bounds;
use crate::componential::{
    EntriesOnlyPresentation, ExchangeableOutputPresentation, OperadPresentation, Operand,
};
use crate::error::{Error, Result};
use crate::labels::{Bijection, FiniteSet, Label};
use crate::natural::NaturalMap;
use crate::species::{Species, SpeciesImpl};
use crate::structure::Structure;

pub const VERSION: u32 = 1;
const MAGIC: &str = "cyclops-presentation";

/// Which of the four presentations a file tabulates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    EntriesOnly,
    ExchangeableOutput,
    AlgebraicEntriesOnly,
    AlgebraicExchangeableOutput,
}

impl Kind {
    pub const ALL: [Kind; 4] = [
        Kind::EntriesOnly,
        Kind::ExchangeableOutput,
        Kind::AlgebraicEntriesOnly,
        Kind::AlgebraicExchangeableOutput,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::EntriesOnly => "entries-only",
            Kind::ExchangeableOutput => "exchangeable-output",
            Kind::AlgebraicEntriesOnly => "algebraic-entries-only",
            Kind::AlgebraicExchangeableOutput => "algebraic-exchangeable-output",
        }
    }

    fn compose_keyword(self) -> &'static str {
        match self {
            Kind::EntriesOnly | Kind::ExchangeableOutput => "compose",
            Kind::AlgebraicEntriesOnly => "rho",
            Kind::AlgebraicExchangeableOutput => "nu",
        }
    }

    fn dact_keyword(self) -> Option<&'static str> {
        match self {
            Kind::ExchangeableOutput => Some("dact"),
            Kind::AlgebraicExchangeableOutput => Some("d"),
            _ => None,
        }
    }

    /// Size of the sets carrying units (`id_{x,y}` or `id_x`).
    fn unit_size(self) -> usize {
        match self {
            Kind::EntriesOnly | Kind::AlgebraicEntriesOnly => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Semantic(format!("unknown kind {s:?}")))
    }
}

/// A structure on a set, by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub set: FiniteSet,
    pub id: String,
}

/// A binary operation row.
///
/// Entries-only: `f ₓ∘ᵧ g`, both labels present. Exchangeable-output:
/// `f ∘ₓ g`, no `y`. Algebraic: `ρ` or `ν` on a product whose split is
/// `(left.set, right.set)`; no labels, and the entries live on the derivative
/// sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeRow {
    pub left: Entry,
    pub x: Option<Label>,
    pub right: Entry,
    pub y: Option<Label>,
    pub result: String,
}

/// `D_x(f)` (componential) or `D(f)` with `f` on `X ∪ {*X}` (algebraic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DactRow {
    pub entry: Entry,
    pub x: Option<Label>,
    pub result: String,
}

/// Transport along the transposition of positions `i` and `i + 1` of `set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapRow {
    pub set: FiniteSet,
    pub position: usize,
    pub from: String,
    pub to: String,
}

/// Transport along the renaming of `a ∈ set` to `b ∉ set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenameRow {
    pub set: FiniteSet,
    pub a: Label,
    pub b: Label,
    pub from: String,
    pub to: String,
}

/// The parsed content of a presentation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub version: u32,
    pub kind: Kind,
    pub name: String,
    pub max_size: usize,
    pub atoms: Vec<Label>,
    pub structures: BTreeMap<String, Structure>,
    pub carrier: Vec<(FiniteSet, Vec<String>)>,
    pub units: Vec<(FiniteSet, String)>,
    pub compose: Vec<ComposeRow>,
    pub dact: Vec<DactRow>,
    pub swaps: Vec<SwapRow>,
    pub renames: Vec<RenameRow>,
}

/// A presentation rebuilt from a file.
#[derive(Clone)]
pub enum Loaded {
    EntriesOnly(EntriesOnlyPresentation),
    ExchangeableOutput(ExchangeableOutputPresentation),
    AlgebraicEntriesOnly(AlgebraicEntriesOnly),
    AlgebraicExchangeableOutput(AlgebraicExchangeableOutput),
}

impl Loaded {
    pub fn kind(&self) -> Kind {
        match self {
            Loaded::EntriesOnly(_) => Kind::EntriesOnly,
            Loaded::ExchangeableOutput(_) => Kind::ExchangeableOutput,
            Loaded::AlgebraicEntriesOnly(_) => Kind::AlgebraicEntriesOnly,
            Loaded::AlgebraicExchangeableOutput(_) => Kind::AlgebraicExchangeableOutput,
        }
    }
}

// ------------------------------------------------------------------ render

impl PresentationFile {
    pub fn bounds(&self) -> Bounds {
        Bounds::with_pool(self.atoms.clone(), self.max_size)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("{MAGIC} {}", self.version));
        line(format!("kind {}", self.kind));
        line(format!("name {}", self.name));
        line(format!("max_size {}", self.max_size));
        line(format!("atoms {}", join(self.atoms.iter())));
        for (id, s) in &self.structures {
            line(format!("structure {id} {s}"));
        }
        for (set, ids) in &self.carrier {
            let mut l = format!("carrier {set}");
            for id in ids {
                let _ = write!(l, " {id}");
            }
            line(l);
        }
        for (set, id) in &self.units {
            line(format!("unit {set} {id}"));
        }
        let kw = self.kind.compose_keyword();
        for r in &self.compose {
            let mut l = format!("{kw} {} {}", r.left.set, r.left.id);
            if let Some(x) = &r.x {
                let _ = write!(l, " {x}");
            }
            let _ = write!(l, " {} {}", r.right.set, r.right.id);
            if let Some(y) = &r.y {
                let _ = write!(l, " {y}");
            }
            let _ = write!(l, " -> {}", r.result);
            line(l);
        }
        if let Some(kw) = self.kind.dact_keyword() {
            for r in &self.dact {
                let mut l = format!("{kw} {} {}", r.entry.set, r.entry.id);
                if let Some(x) = &r.x {
                    let _ = write!(l, " {x}");
                }
                let _ = write!(l, " -> {}", r.result);
                line(l);
            }
        }
        for r in &self.swaps {
            line(format!(
                "swap {} {} {} -> {}",
                r.set, r.position, r.from, r.to
            ));
        }
        for r in &self.renames {
            line(format!(
                "rename {} {} {} {} -> {}",
                r.set, r.a, r.b, r.from, r.to
            ));
        }
        out
    }
}

fn join<T: fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

// ------------------------------------------------------------------- parse

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

impl<'a> Line<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            message: message.into(),
        }
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.tokens.len() == n {
            Ok(())
        } else {
            Err(self.err(format!(
                "{} expects {} fields, found {}",
                self.tokens[0],
                n - 1,
                self.tokens.len() - 1
            )))
        }
    }

    fn set(&self, i: usize) -> Result<FiniteSet> {
        FiniteSet::parse(self.tokens[i]).map_err(|e| self.err(e.to_string()))
    }

    fn label(&self, i: usize) -> Result<Label> {
        Label::parse(self.tokens[i]).map_err(|e| self.err(e.to_string()))
    }

    fn id(&self, i: usize) -> Result<String> {
        let t = self.tokens[i];
        if t.len() == 16
            && t.bytes()
                .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
        {
            Ok(t.to_string())
        } else {
            Err(self.err(format!("{t:?} is not a structure id")))
        }
    }

    fn number(&self, i: usize) -> Result<usize> {
        self.tokens[i]
            .parse()
            .map_err(|_| self.err(format!("{:?} is not a number", self.tokens[i])))
    }

    fn arrow(&self, i: usize) -> Result<()> {
        if self.tokens[i] == "->" {
            Ok(())
        } else {
            Err(self.err(format!("expected '->', found {:?}", self.tokens[i])))
        }
    }
}

impl PresentationFile {
    /// Reads a file. Only syntax is checked here; see [`PresentationFile::load`].
    pub fn parse(text: &str) -> Result<PresentationFile> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let mut header = |key: &str| -> Result<(usize, String)> {
            let (n, l) = lines.next().ok_or(Error::Parse {
                line: text.lines().count() + 1,
                message: format!("missing {key:?} header"),
            })?;
            match l.split_once(' ') {
                Some((k, rest)) if k == key && !rest.is_empty() => Ok((n, rest.to_string())),
                _ => Err(Error::Parse {
                    line: n,
                    message: format!("expected {key:?} header, found {l:?}"),
                }),
            }
        };
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let (n, v) = header(MAGIC)?;
        let version = v
            .parse()
            .map_err(|_| parse_err(n, format!("bad version {v:?}")))?;
        let (n, k) = header("kind")?;
        let kind = Kind::from_str(&k).map_err(|e| parse_err(n, e.to_string()))?;
        let (_, name) = header("name")?;
        let (n, m) = header("max_size")?;
        let max_size = m
            .parse()
            .map_err(|_| parse_err(n, format!("bad max_size {m:?}")))?;
        let (n, a) = header("atoms")?;
        let atoms = a
            .split(' ')
            .map(|t| match Label::parse(t) {
                Ok(l) if l.is_atom() => Ok(l),
                _ => Err(parse_err(n, format!("{t:?} is not an atom"))),
            })
            .collect::<Result<Vec<_>>>()?;

        let mut file = PresentationFile {
            version,
            kind,
            name,
            max_size,
            atoms,
            structures: BTreeMap::new(),
            carrier: Vec::new(),
            units: Vec::new(),
            compose: Vec::new(),
            dact: Vec::new(),
            swaps: Vec::new(),
            renames: Vec::new(),
        };
        let ckw = kind.compose_keyword();
        let dkw = kind.dact_keyword();
        for (number, raw) in lines {
            if let Some(rest) = raw.strip_prefix("structure ") {
                let (id, body) = rest.split_once(' ').unwrap_or((rest, ""));
                let l = Line {
                    number,
                    tokens: vec!["structure", id],
                };
                let id = l.id(1)?;
                let s = Structure::parse(body).map_err(|e| l.err(e.to_string()))?;
                if file.structures.insert(id.clone(), s).is_some() {
                    return Err(l.err(format!("structure {id} listed twice")));
                }
                continue;
            }
            let l = Line {
                number,
                tokens: raw.split(' ').collect(),
            };
            let head = l.tokens[0];
            match head {
                "carrier" => {
                    if l.tokens.len() < 2 {
                        return Err(l.err("carrier expects a set"));
                    }
                    let ids = (2..l.tokens.len())
                        .map(|i| l.id(i))
                        .collect::<Result<_>>()?;
                    file.carrier.push((l.set(1)?, ids));
                }
                "unit" => {
                    l.arity(3)?;
                    file.units.push((l.set(1)?, l.id(2)?));
                }
                "swap" => {
                    l.arity(6)?;
                    l.arrow(4)?;
                    file.swaps.push(SwapRow {
                        set: l.set(1)?,
                        position: l.number(2)?,
                        from: l.id(3)?,
                        to: l.id(5)?,
                    });
                }
                "rename" => {
                    l.arity(7)?;
                    l.arrow(5)?;
                    file.renames.push(RenameRow {
                        set: l.set(1)?,
                        a: l.label(2)?,
                        b: l.label(3)?,
                        from: l.id(4)?,
                        to: l.id(6)?,
                    });
                }
                h if h == ckw => {
                    let labelled = matches!(kind, Kind::EntriesOnly | Kind::ExchangeableOutput);
                    let with_y = kind == Kind::EntriesOnly;
                    let n = 7 + usize::from(labelled) + usize::from(with_y);
                    l.arity(n)?;
                    let mut i = 1;
                    let left = Entry {
                        set: l.set(i)?,
                        id: l.id(i + 1)?,
                    };
                    i += 2;
                    let x = if labelled {
                        i += 1;
                        Some(l.label(i - 1)?)
                    } else {
                        None
                    };
                    let right = Entry {
                        set: l.set(i)?,
                        id: l.id(i + 1)?,
                    };
                    i += 2;
                    let y = if with_y {
                        i += 1;
                        Some(l.label(i - 1)?)
                    } else {
                        None
                    };
                    l.arrow(i)?;
                    file.compose.push(ComposeRow {
                        left,
                        x,
                        right,
                        y,
                        result: l.id(i + 1)?,
                    });
                }
                h if Some(h) == dkw => {
                    let labelled = kind == Kind::ExchangeableOutput;
                    l.arity(5 + usize::from(labelled))?;
                    let entry = Entry {
                        set: l.set(1)?,
                        id: l.id(2)?,
                    };
                    let x = if labelled { Some(l.label(3)?) } else { None };
                    let i = 3 + usize::from(labelled);
                    l.arrow(i)?;
                    file.dact.push(DactRow {
                        entry,
                        x,
                        result: l.id(i + 1)?,
                    });
                }
                other => return Err(l.err(format!("unknown row {other:?} for kind {kind}"))),
            }
        }
        Ok(file)
    }
}

// ---------------------------------------------------------- tabulated species

/// The carrier and generator transports read from a file.
struct Table {
    name: String,
    pool: FiniteSet,
    max_size: usize,
    carrier: HashMap<FiniteSet, Vec<Structure>>,
    swaps: HashMap<(FiniteSet, usize, Structure), Structure>,
    renames: HashMap<(FiniteSet, Label, Label, Structure), Structure>,
    /// `reference[n]` is the set of the first `n` atoms.
    reference: Vec<FiniteSet>,
}

fn semantic(message: impl Into<String>) -> Error {
    Error::Semantic(message.into())
}

/// Renames labels through `map`; stars and blocks over mapped labels follow.
fn map_label(map: &HashMap<Label, Label>, l: &Label) -> Result<Label> {
    if let Some(v) = map.get(l) {
        return Ok(v.clone());
    }
    let inner = |b: &FiniteSet| -> Result<FiniteSet> {
        Ok(FiniteSet::new(
            b.iter()
                .map(|m| map_label(map, m))
                .collect::<Result<Vec<_>>>()?,
        ))
    };
    match l {
        Label::Star(base) => Ok(Label::star(&inner(base)?)),
        Label::Block(block) => Label::block(&inner(block)?),
        Label::Atom(_) => Err(semantic(format!(
            "label {l} lies outside the relabelled set"
        ))),
    }
}

fn monotone(from: &FiniteSet, to: &FiniteSet) -> HashMap<Label, Label> {
    from.iter().cloned().zip(to.iter().cloned()).collect()
}

impl Table {
    fn listed(&self, set: &FiniteSet) -> bool {
        set.len() <= self.max_size && set.is_subset(&self.pool)
    }

    fn reference(&self, n: usize) -> Result<&FiniteSet> {
        self.reference
            .get(n)
            .ok_or_else(|| Error::Truncated(format!("a set of size {n} in {}", self.name)))
    }

    fn structures(&self, set: &FiniteSet) -> Result<Vec<Structure>> {
        if let Some(v) = self.carrier.get(set) {
            return Ok(v.clone());
        }
        if set.is_subset(&self.pool) {
            return Err(Error::Truncated(set.to_string()));
        }
        let r = self.reference(set.len())?;
        let map = monotone(r, set);
        self.carrier[r]
            .iter()
            .map(|s| s.relabel(&|l| map_label(&map, l)))
            .collect()
    }

    /// Transport between listed sets along the label map `pi: X → Y`.
    fn move_listed(
        &self,
        x: &FiniteSet,
        y: &FiniteSet,
        pi: &HashMap<Label, Label>,
        s: &Structure,
    ) -> Result<Structure> {
        let gone: Vec<&Label> = x.iter().filter(|l| !y.contains(l)).collect();
        let new: Vec<&Label> = y.iter().filter(|l| !x.contains(l)).collect();
        // pi = rename ∘ p with p a permutation of X.
        let back = |v: &Label| -> Label {
            match new.iter().position(|n| *n == v) {
                Some(i) => gone[i].clone(),
                None => v.clone(),
            }
        };
        let mut p: Vec<usize> = x
            .iter()
            .map(|l| x.index_of(&back(&pi[l])).expect("image lies in X"))
            .collect();
        let mut cur = s.clone();
        while let Some(j) = (0..p.len().saturating_sub(1)).find(|&j| p[j] > p[j + 1]) {
            cur = self
                .swaps
                .get(&(x.clone(), j, cur.clone()))
                .ok_or_else(|| semantic(format!("no swap {x} {j} row for {cur}")))?
                .clone();
            p.swap(j, j + 1);
        }
        let mut set = x.clone();
        for (a, b) in gone.iter().zip(&new) {
            cur = self
                .renames
                .get(&(set.clone(), (*a).clone(), (*b).clone(), cur.clone()))
                .ok_or_else(|| semantic(format!("no rename {set} {a} {b} row for {cur}")))?
                .clone();
            set = set.remove(a).insert((*b).clone());
        }
        Ok(cur)
    }

    /// Transport along `σ: Y → X`.
    fn transport(&self, sigma: &Bijection, s: &Structure) -> Result<Structure> {
        let (x, y) = (sigma.codomain(), sigma.domain());
        let (lx, s0, into_x) = if self.listed(x) {
            (x.clone(), s.clone(), None)
        } else {
            let r = self.reference(x.len())?.clone();
            let down = monotone(x, &r);
            let s0 = s.relabel(&|l| map_label(&down, l))?;
            (r.clone(), s0, Some(monotone(&r, x)))
        };
        let (ly, out_of_y) = if self.listed(y) {
            (y.clone(), None)
        } else {
            let r = self.reference(y.len())?.clone();
            (r.clone(), Some(monotone(y, &r)))
        };
        let mut pi = HashMap::new();
        for l in lx.iter() {
            let u = into_x.as_ref().map_or(l, |m| &m[l]);
            let v = sigma.preimage_or_err(u)?;
            let w = out_of_y.as_ref().map_or(v.clone(), |m| m[&v].clone());
            pi.insert(l.clone(), w);
        }
        let moved = self.move_listed(&lx, &ly, &pi, &s0)?;
        if self.listed(y) {
            Ok(moved)
        } else {
            let up = monotone(&ly, y);
            moved.relabel(&|l| map_label(&up, l))
        }
    }
}

struct Tabulated(Arc<Table>);

impl SpeciesImpl for Tabulated {
    fn name(&self) -> String {
        self.0.name.clone()
    }

    fn structures(&self, set: &FiniteSet) -> Vec<Structure> {
        // Beyond the tabulated range the carrier is empty, as for any truncation.
        self.0.structures(set).unwrap_or_default()
    }

    fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure> {
        self.0.transport(sigma, value)
    }
}

/// Moves `s` on `from` to `map(from)` along the carrier.
fn relocate(
    species: &Species,
    from: &FiniteSet,
    map: &HashMap<Label, Label>,
    s: &Structure,
) -> Result<Structure> {
    let sigma = Bijection::from_pairs(from.iter().map(|l| (map[l].clone(), l.clone())))?;
    species.transport(&sigma, s)
}

// ---------------------------------------------------------------- loading

type NaturalTable = HashMap<(FiniteSet, Structure), Structure>;

/// A natural map given by its values on listed sets and extended to other
/// sets of the same sizes by transport.
fn tabulated_map(
    table: Arc<Table>,
    name: &str,
    source: Species,
    target: Species,
    rows: NaturalTable,
) -> NaturalMap {
    let (src, tgt) = (source.clone(), target.clone());
    NaturalMap::new(name, source, target, move |x, v| {
        if let Some(r) = rows.get(&(x.clone(), v.clone())) {
            return Ok(r.clone());
        }
        if table.listed(x) {
            return Err(Error::Truncated(format!("{v} on {x}")));
        }
        let r = table.reference(x.len())?;
        let down = monotone(x, r);
        let v0 = relocate(&src, x, &down, v)?;
        let r0 = rows
            .get(&(r.clone(), v0.clone()))
            .ok_or_else(|| Error::Truncated(format!("{v0} on {r}")))?;
        relocate(&tgt, r, &monotone(r, x), r0)
    })
}

fn compose_key(f: &Operand, x: &Label, g: &Operand, y: Option<&Label>) -> ComposeKey {
    (
        f.set.clone(),
        f.value.clone(),
        x.clone(),
        g.set.clone(),
        g.value.clone(),
        y.cloned(),
    )
}

type ComposeKey = (
    FiniteSet,
    Structure,
    Label,
    FiniteSet,
    Structure,
    Option<Label>,
);

impl PresentationFile {
    /// Checks that every id resolves and every table is total, then rebuilds
    /// the presentation.
    pub fn load(&self) -> Result<Loaded> {
        if self.version != VERSION {
            return Err(semantic(format!(
                "unsupported version {} (expected {VERSION})",
                self.version
            )));
        }
        let pool = FiniteSet::new(self.atoms.iter().cloned());
        if pool.len() != self.atoms.len() || pool.as_slice() != self.atoms.as_slice() {
            return Err(semantic("atoms must be sorted and distinct"));
        }
        if self.max_size == 0 || self.max_size > self.atoms.len() {
            return Err(semantic(format!(
                "max_size {} must lie between 1 and the number of atoms {}",
                self.max_size,
                self.atoms.len()
            )));
        }
        for (id, s) in &self.structures {
            if &s.content_id() != id {
                return Err(semantic(format!(
                    "structure {id} has content id {}",
                    s.content_id()
                )));
            }
        }
        let resolve = |id: &str| -> Result<Structure> {
            self.structures
                .get(id)
                .cloned()
                .ok_or_else(|| semantic(format!("dangling structure id {id}")))
        };

        // Carrier: exactly the subsets of the pool up to max_size.
        let bounds = self.bounds();
        let expected: HashSet<FiniteSet> = bounds.sets().into_iter().collect();
        let mut carrier = HashMap::new();
        for (set, ids) in &self.carrier {
            if !expected.contains(set) {
                return Err(semantic(format!(
                    "carrier set {set} is not a subset of the atoms within max_size"
                )));
            }
            let values = ids.iter().map(|i| resolve(i)).collect::<Result<Vec<_>>>()?;
            let distinct: HashSet<&Structure> = values.iter().collect();
            if distinct.len() != values.len() {
                return Err(semantic(format!(
                    "carrier on {set} lists a structure twice"
                )));
            }
            if carrier.insert(set.clone(), values).is_some() {
                return Err(semantic(format!("carrier on {set} listed twice")));
            }
        }
        if let Some(missing) = bounds.sets().into_iter().find(|s| !carrier.contains_key(s)) {
            return Err(semantic(format!("no carrier row for {missing}")));
        }
        let member = |set: &FiniteSet, id: &str| -> Result<Structure> {
            let s = resolve(id)?;
            if carrier[set].contains(&s) {
                Ok(s)
            } else {
                Err(semantic(format!("{s} is not listed on {set}")))
            }
        };

        // Generator transports, total over listed data.
        let mut swaps = HashMap::new();
        for r in &self.swaps {
            if !carrier.contains_key(&r.set) || r.position + 1 >= r.set.len() {
                return Err(semantic(format!(
                    "swap {} {} is not a generator",
                    r.set, r.position
                )));
            }
            let key = (r.set.clone(), r.position, member(&r.set, &r.from)?);
            if swaps.insert(key, member(&r.set, &r.to)?).is_some() {
                return Err(semantic(format!(
                    "swap {} {} {} listed twice",
                    r.set, r.position, r.from
                )));
            }
        }
        let mut renames = HashMap::new();
        for r in &self.renames {
            let target = r.set.remove(&r.a).insert(r.b.clone());
            if !carrier.contains_key(&r.set)
                || !r.set.contains(&r.a)
                || !pool.contains(&r.b)
                || r.set.contains(&r.b)
            {
                return Err(semantic(format!(
                    "rename {} {} {} is not a generator",
                    r.set, r.a, r.b
                )));
            }
            let key = (
                r.set.clone(),
                r.a.clone(),
                r.b.clone(),
                member(&r.set, &r.from)?,
            );
            if renames.insert(key, member(&target, &r.to)?).is_some() {
                return Err(semantic(format!(
                    "rename {} {} {} {} listed twice",
                    r.set, r.a, r.b, r.from
                )));
            }
        }
        for (set, values) in &carrier {
            for s in values {
                for j in 0..set.len().saturating_sub(1) {
                    if !swaps.contains_key(&(set.clone(), j, s.clone())) {
                        return Err(semantic(format!("no swap {set} {j} row for {s}")));
                    }
                }
                for a in set.iter() {
                    for b in pool.difference(set).iter() {
                        if !renames.contains_key(&(set.clone(), a.clone(), b.clone(), s.clone())) {
                            return Err(semantic(format!("no rename {set} {a} {b} row for {s}")));
                        }
                    }
                }
            }
        }

        let reference = (0..=self.max_size)
            .map(|n| FiniteSet::new(self.atoms[..n].iter().cloned()))
            .collect();
        let table = Arc::new(Table {
            name: self.name.clone(),
            pool: pool.clone(),
            max_size: self.max_size,
            carrier: carrier.clone(),
            swaps,
            renames,
            reference,
        });
        let species = Species::custom(Tabulated(table.clone()));

        // Units.
        let mut units = HashMap::new();
        for (set, id) in &self.units {
            if set.len() != self.kind.unit_size() || !carrier.contains_key(set) {
                return Err(semantic(format!("unit row on {set} has the wrong size")));
            }
            if units.insert(set.clone(), member(set, id)?).is_some() {
                return Err(semantic(format!("unit on {set} listed twice")));
            }
        }
        if let Some(missing) = bounds
            .sets_of_size(self.kind.unit_size())
            .into_iter()
            .find(|s| !units.contains_key(s))
        {
            return Err(semantic(format!("no unit row for {missing}")));
        }

        match self.kind {
            Kind::EntriesOnly => self.load_entries_only(table, species, units, &member),
            Kind::ExchangeableOutput => {
                self.load_exchangeable_output(table, species, units, &member)
            }
            Kind::AlgebraicEntriesOnly | Kind::AlgebraicExchangeableOutput => {
                self.load_algebraic(table, species, units, &resolve)
            }
        }
    }

    fn load_entries_only(
        &self,
        table: Arc<Table>,
        species: Species,
        units: HashMap<FiniteSet, Structure>,
        member: &impl Fn(&FiniteSet, &str) -> Result<Structure>,
    ) -> Result<Loaded> {
        let mut rows: HashMap<ComposeKey, Structure> = HashMap::new();
        for r in &self.compose {
            let (x, y) = (r.x.clone().expect("parsed"), r.y.clone().expect("parsed"));
            let (rx, ry) = (r.left.set.remove(&x), r.right.set.remove(&y));
            if !r.left.set.contains(&x) || !r.right.set.contains(&y) || !rx.is_disjoint(&ry) {
                return Err(semantic(format!(
                    "compose row {} {x} {} {y} is not composable",
                    r.left.set, r.right.set
                )));
            }
            let result_set = rx.union(&ry);
            if !table.listed(&result_set) {
                return Err(semantic(format!(
                    "compose row lands outside the listed sets on {result_set}"
                )));
            }
            let f = Operand::new(r.left.set.clone(), member(&r.left.set, &r.left.id)?);
            let g = Operand::new(r.right.set.clone(), member(&r.right.set, &r.right.id)?);
            let key = compose_key(&f, &x, &g, Some(&y));
            if rows.insert(key, member(&result_set, &r.result)?).is_some() {
                return Err(semantic(format!("compose {f} {x} {g} {y} listed twice")));
            }
        }
        for (f, x, g, y) in entries_only_instances(&table, &self.bounds()) {
            if !rows.contains_key(&compose_key(&f, &x, &g, Some(&y))) {
                return Err(semantic(format!("no compose row for {f} {x}∘{y} {g}")));
            }
        }
        let (t1, s1) = (table.clone(), species.clone());
        let unit = move |set: &FiniteSet| -> Result<Structure> {
            if let Some(u) = units.get(set) {
                return Ok(u.clone());
            }
            let r = t1.reference(set.len())?;
            relocate(&s1, r, &monotone(r, set), &units[r])
        };
        let s2 = species.clone();
        let compose = move |f: &Operand, x: &Label, g: &Operand, y: &Label| -> Result<Structure> {
            if let Some(v) = rows.get(&compose_key(f, x, g, Some(y))) {
                return Ok(v.clone());
            }
            let (rx, ry) = (f.set.remove(x), g.set.remove(y));
            let whole = rx.union(&ry);
            if table.listed(&f.set) && table.listed(&g.set) && table.listed(&whole) {
                return Err(semantic(format!("no compose row for {f} {x}∘{y} {g}")));
            }
            // Move onto the first atoms; x and y go to labels of the other side.
            let r = table.reference(whole.len())?;
            let lambda = monotone(&whole, r);
            let (Some(gy), Some(fx)) = (ry.as_slice().first(), rx.as_slice().first()) else {
                return Err(Error::Truncated(format!("{f} {x}∘{y} {g}")));
            };
            let (x2, y2) = (lambda[gy].clone(), lambda[fx].clone());
            let mut mf = lambda.clone();
            mf.retain(|k, _| rx.contains(k));
            mf.insert(x.clone(), x2.clone());
            let mut mg = lambda.clone();
            mg.retain(|k, _| ry.contains(k));
            mg.insert(y.clone(), y2.clone());
            let f2 = Operand::new(
                FiniteSet::new(mf.values().cloned()),
                relocate(&s2, &f.set, &mf, &f.value)?,
            );
            let g2 = Operand::new(
                FiniteSet::new(mg.values().cloned()),
                relocate(&s2, &g.set, &mg, &g.value)?,
            );
            let v = rows
                .get(&compose_key(&f2, &x2, &g2, Some(&y2)))
                .ok_or_else(|| Error::Truncated(format!("{f2} {x2}∘{y2} {g2}")))?;
            relocate(&s2, r, &monotone(r, &whole), v)
        };
        Ok(Loaded::EntriesOnly(EntriesOnlyPresentation::new(
            self.name.clone(),
            species,
            unit,
            compose,
        )))
    }

    fn load_exchangeable_output(
        &self,
        table: Arc<Table>,
        species: Species,
        units: HashMap<FiniteSet, Structure>,
        member: &impl Fn(&FiniteSet, &str) -> Result<Structure>,
    ) -> Result<Loaded> {
        let mut rows: HashMap<ComposeKey, Structure> = HashMap::new();
        for r in &self.compose {
            let x = r.x.clone().expect("parsed");
            let rx = r.left.set.remove(&x);
            if !r.left.set.contains(&x) || !rx.is_disjoint(&r.right.set) {
                return Err(semantic(format!(
                    "compose row {} {x} {} is not composable",
                    r.left.set, r.right.set
                )));
            }
            let result_set = rx.union(&r.right.set);
            if !table.listed(&result_set) {
                return Err(semantic(format!(
                    "compose row lands outside the listed sets on {result_set}"
                )));
            }
            let f = Operand::new(r.left.set.clone(), member(&r.left.set, &r.left.id)?);
            let g = Operand::new(r.right.set.clone(), member(&r.right.set, &r.right.id)?);
            if rows
                .insert(
                    compose_key(&f, &x, &g, None),
                    member(&result_set, &r.result)?,
                )
                .is_some()
            {
                return Err(semantic(format!("compose {f} {x} {g} listed twice")));
            }
        }
        let mut dacts: HashMap<(Operand, Label), Structure> = HashMap::new();
        for r in &self.dact {
            let x = r.x.clone().expect("parsed");
            if !r.entry.set.contains(&x) {
                return Err(semantic(format!("dact row: {x} is not in {}", r.entry.set)));
            }
            let f = Operand::new(r.entry.set.clone(), member(&r.entry.set, &r.entry.id)?);
            let v = member(&r.entry.set, &r.result)?;
            if dacts.insert((f.clone(), x.clone()), v).is_some() {
                return Err(semantic(format!("dact {f} {x} listed twice")));
            }
        }
        let bounds = self.bounds();
        for (f, x, g) in operad_instances(&table, &bounds) {
            if !rows.contains_key(&compose_key(&f, &x, &g, None)) {
                return Err(semantic(format!("no compose row for {f} ∘{x} {g}")));
            }
        }
        for set in bounds.sets() {
            for v in &table.carrier[&set] {
                for x in set.iter() {
                    let f = Operand::new(set.clone(), v.clone());
                    if !dacts.contains_key(&(f.clone(), x.clone())) {
                        return Err(semantic(format!("no dact row for {f} {x}")));
                    }
                }
            }
        }

        let (t1, s1) = (table.clone(), species.clone());
        let unit = move |x: &Label| -> Result<Structure> {
            let set = FiniteSet::singleton(x.clone());
            if let Some(u) = units.get(&set) {
                return Ok(u.clone());
            }
            let r = t1.reference(1)?;
            relocate(&s1, r, &monotone(r, &set), &units[r])
        };
        let (t2, s2) = (table.clone(), species.clone());
        let compose = move |f: &Operand, x: &Label, g: &Operand| -> Result<Structure> {
            if let Some(v) = rows.get(&compose_key(f, x, g, None)) {
                return Ok(v.clone());
            }
            let rx = f.set.remove(x);
            let whole = rx.union(&g.set);
            if t2.listed(&f.set) && t2.listed(&g.set) && t2.listed(&whole) {
                return Err(semantic(format!("no compose row for {f} ∘{x} {g}")));
            }
            let r = t2.reference(whole.len())?;
            let lambda = monotone(&whole, r);
            let Some(gy) = g.set.as_slice().first() else {
                return Err(Error::Truncated(format!("{f} ∘{x} {g}")));
            };
            let x2 = lambda[gy].clone();
            let mut mf = lambda.clone();
            mf.retain(|k, _| rx.contains(k));
            mf.insert(x.clone(), x2.clone());
            let mut mg = lambda.clone();
            mg.retain(|k, _| g.set.contains(k));
            let f2 = Operand::new(
                FiniteSet::new(mf.values().cloned()),
                relocate(&s2, &f.set, &mf, &f.value)?,
            );
            let g2 = Operand::new(
                FiniteSet::new(mg.values().cloned()),
                relocate(&s2, &g.set, &mg, &g.value)?,
            );
            let v = rows
                .get(&compose_key(&f2, &x2, &g2, None))
                .ok_or_else(|| Error::Truncated(format!("{f2} ∘{x2} {g2}")))?;
            relocate(&s2, r, &monotone(r, &whole), v)
        };
        let s3 = species.clone();
        let dact = move |x: &Label, f: &Operand| -> Result<Structure> {
            if let Some(v) = dacts.get(&(f.clone(), x.clone())) {
                return Ok(v.clone());
            }
            if table.listed(&f.set) {
                return Err(semantic(format!("no dact row for {f} {x}")));
            }
            let r = table.reference(f.set.len())?;
            let down = monotone(&f.set, r);
            let f2 = Operand::new(r.clone(), relocate(&s3, &f.set, &down, &f.value)?);
            let v = dacts
                .get(&(f2.clone(), down[x].clone()))
                .ok_or_else(|| Error::Truncated(format!("{f2}")))?;
            relocate(&s3, r, &monotone(r, &f.set), v)
        };
        let base = OperadPresentation::new(self.name.clone(), species, unit, compose);
        Ok(Loaded::ExchangeableOutput(
            ExchangeableOutputPresentation::new(base, dact),
        ))
    }

    fn load_algebraic(
        &self,
        table: Arc<Table>,
        species: Species,
        units: HashMap<FiniteSet, Structure>,
        resolve: &impl Fn(&str) -> Result<Structure>,
    ) -> Result<Loaded> {
        let arity = self.kind.unit_size();
        let unit_rows: NaturalTable = units
            .into_iter()
            .map(|(set, u)| ((set.clone(), Structure::Whole(set)), u))
            .collect();
        let unit_source = Species::cardinality(arity);
        let unit_map = tabulated_map(
            table.clone(),
            if arity == 2 { "η2" } else { "η1" },
            unit_source,
            species.clone(),
            unit_rows,
        );

        // The product rows: entries live on the derivative sets of the split.
        let ds = species.derivative();
        let right_species = if self.kind == Kind::AlgebraicEntriesOnly {
            ds.clone()
        } else {
            species.clone()
        };
        let source = Species::product(&ds, &right_species);
        let bounds = self.bounds();
        let mut rows: NaturalTable = HashMap::new();
        let in_species = |sp: &Species, set: &FiniteSet, id: &str| -> Result<Structure> {
            let s = resolve(id)?;
            if sp.contains(set, &s) {
                Ok(s)
            } else {
                Err(semantic(format!("{s} is not a structure on {set}")))
            }
        };
        for r in &self.compose {
            let (x1, x2) = (&r.left.set, &r.right.set);
            let whole = x1.union(x2);
            if !x1.is_disjoint(x2) || !table.listed(&whole) {
                return Err(semantic(format!(
                    "{} row on ({x1}, {x2}) is not a listed split",
                    self.kind.compose_keyword()
                )));
            }
            let f = in_species(&ds, x1, &r.left.id)?;
            let g = in_species(&right_species, x2, &r.right.id)?;
            let v = Structure::pair(f, g, x1.clone(), x2.clone());
            let result = in_species(&species, &whole, &r.result)?;
            if rows.insert((whole, v.clone()), result).is_some() {
                return Err(semantic(format!("{v} listed twice")));
            }
        }
        for set in bounds.sets() {
            for v in source.eval(&set).iter() {
                if !rows.contains_key(&(set.clone(), v.clone())) {
                    return Err(semantic(format!(
                        "no {} row for {v}",
                        self.kind.compose_keyword()
                    )));
                }
            }
        }
        let name = self.name.clone();
        match self.kind {
            Kind::AlgebraicEntriesOnly => {
                if !self.dact.is_empty() {
                    return Err(semantic("entries-only files carry no exchange rows"));
                }
                let a = AlgebraicEntriesOnly::new(
                    name,
                    species.clone(),
                    |_, _| unreachable_row(),
                    |_, _| unreachable_row(),
                );
                let rho = tabulated_map(table, "ρ", a.rho.source().clone(), species, rows);
                Ok(Loaded::AlgebraicEntriesOnly(
                    a.with_rho(rho).with_eta2(unit_map),
                ))
            }
            _ => {
                let mut drows: NaturalTable = HashMap::new();
                for r in &self.dact {
                    let x = &r.entry.set;
                    if !table.listed(x) {
                        return Err(semantic(format!("d row on {x} is not listed")));
                    }
                    let f = in_species(&ds, x, &r.entry.id)?;
                    let v = in_species(&ds, x, &r.result)?;
                    if drows.insert((x.clone(), f.clone()), v).is_some() {
                        return Err(semantic(format!("d row for {f} listed twice")));
                    }
                }
                for set in bounds.sets() {
                    for f in ds.eval(&set).iter() {
                        if !drows.contains_key(&(set.clone(), f.clone())) {
                            return Err(semantic(format!("no d row for {f} on {set}")));
                        }
                    }
                }
                let mut base = AlgebraicOperad::new(
                    name,
                    species.clone(),
                    |_, _| unreachable_row(),
                    |_, _| unreachable_row(),
                );
                base.nu = tabulated_map(
                    table.clone(),
                    "ν",
                    base.nu.source().clone(),
                    species.clone(),
                    rows,
                );
                base.eta1 = unit_map;
                let d = tabulated_map(table, "D", ds.clone(), ds, drows);
                let exo =
                    AlgebraicExchangeableOutput::new(base, |_, _| unreachable_row()).with_d(d);
                Ok(Loaded::AlgebraicExchangeableOutput(exo))
            }
        }
    }
}

fn unreachable_row() -> Result<Structure> {
    Err(semantic("placeholder component"))
}

/// `(f, x, g, y)` with all sets listed and a listed result.
fn entries_only_instances(table: &Table, bounds: &Bounds) -> Vec<(Operand, Label, Operand, Label)> {
    let sets = bounds.sets();
    let mut out = Vec::new();
    for xs in &sets {
        for ys in &sets {
            for x in xs.iter() {
                for y in ys.iter() {
                    let (rx, ry) = (xs.remove(x), ys.remove(y));
                    if !rx.is_disjoint(&ry) || rx.len() + ry.len() > bounds.max_size {
                        continue;
                    }
                    for f in &table.carrier[xs] {
                        for g in &table.carrier[ys] {
                            out.push((
                                Operand::new(xs.clone(), f.clone()),
                                x.clone(),
                                Operand::new(ys.clone(), g.clone()),
                                y.clone(),
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

/// `(f, x, g)` with all sets listed and a listed result.
fn operad_instances(table: &Table, bounds: &Bounds) -> Vec<(Operand, Label, Operand)> {
    let sets = bounds.sets();
    let mut out = Vec::new();
    for xs in &sets {
        for ys in &sets {
            for x in xs.iter() {
                let rx = xs.remove(x);
                if !rx.is_disjoint(ys) || rx.len() + ys.len() > bounds.max_size {
                    continue;
                }
                for f in &table.carrier[xs] {
                    for g in &table.carrier[ys] {
                        out.push((
                            Operand::new(xs.clone(), f.clone()),
                            x.clone(),
                            Operand::new(ys.clone(), g.clone()),
                        ));
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- export

struct Builder {
    structures: BTreeMap<String, Structure>,
}

impl Builder {
    fn id(&mut self, s: &Structure) -> Result<String> {
        let id = s.content_id();
        match self.structures.get(&id) {
            Some(old) if old != s => Err(semantic(format!("content ids of {old} and {s} collide"))),
            Some(_) => Ok(id),
            None => {
                self.structures.insert(id.clone(), s.clone());
                Ok(id)
            }
        }
    }
}

/// Carrier, units-free skeleton and transport rows of `species` over `bounds`.
fn skeleton(
    kind: Kind,
    name: &str,
    species: &Species,
    bounds: &Bounds,
    b: &mut Builder,
) -> Result<PresentationFile> {
    if bounds.max_size > bounds.pool.len() {
        return Err(Error::precondition("max_size exceeds the atom pool"));
    }
    let pool = bounds.pool_set();
    let mut file = PresentationFile {
        version: VERSION,
        kind,
        name: name.replace('\n', " "),
        max_size: bounds.max_size,
        atoms: bounds.pool.clone(),
        structures: BTreeMap::new(),
        carrier: Vec::new(),
        units: Vec::new(),
        compose: Vec::new(),
        dact: Vec::new(),
        swaps: Vec::new(),
        renames: Vec::new(),
    };
    for set in bounds.sets() {
        let values = species.eval(&set);
        let ids = values.iter().map(|s| b.id(s)).collect::<Result<Vec<_>>>()?;
        for (s, id) in values.iter().zip(&ids) {
            let labels = set.as_slice();
            for j in 0..labels.len().saturating_sub(1) {
                let sigma = Bijection::exchange(&set, &labels[j], &labels[j + 1])?;
                let t = species.transport(&sigma, s)?;
                file.swaps.push(SwapRow {
                    set: set.clone(),
                    position: j,
                    from: id.clone(),
                    to: b.id(&t)?,
                });
            }
            for a in set.iter() {
                for c in pool.difference(&set).iter() {
                    let sigma = Bijection::renaming(&set, a, c)?;
                    let t = species.transport(&sigma, s)?;
                    file.renames.push(RenameRow {
                        set: set.clone(),
                        a: a.clone(),
                        b: c.clone(),
                        from: id.clone(),
                        to: b.id(&t)?,
                    });
                }
            }
        }
        file.carrier.push((set, ids));
    }
    Ok(file)
}

fn entry(b: &mut Builder, set: &FiniteSet, s: &Structure) -> Result<Entry> {
    Ok(Entry {
        set: set.clone(),
        id: b.id(s)?,
    })
}

impl PresentationFile {
    /// Tabulates an entries-only presentation over `bounds`.
    pub fn from_entries_only(
        p: &EntriesOnlyPresentation,
        bounds: &Bounds,
    ) -> Result<PresentationFile> {
        let mut b = Builder {
            structures: BTreeMap::new(),
        };
        let mut file = skeleton(Kind::EntriesOnly, &p.name, &p.carrier, bounds, &mut b)?;
        for set in bounds.sets_of_size(2) {
            let u = p.unit_on(&set)?;
            file.units.push((set, b.id(&u)?));
        }
        let table = file_table(&file, &b);
        for (f, x, g, y) in entries_only_instances(&table, bounds) {
            let r = p.compose(&f, &x, &g, &y)?;
            file.compose.push(ComposeRow {
                left: entry(&mut b, &f.set, &f.value)?,
                x: Some(x),
                right: entry(&mut b, &g.set, &g.value)?,
                y: Some(y),
                result: b.id(&r.value)?,
            });
        }
        file.structures = b.structures;
        Ok(file)
    }

    /// Tabulates an exchangeable-output presentation over `bounds`.
    pub fn from_exchangeable_output(
        o: &ExchangeableOutputPresentation,
        bounds: &Bounds,
    ) -> Result<PresentationFile> {
        let mut b = Builder {
            structures: BTreeMap::new(),
        };
        let mut file = skeleton(
            Kind::ExchangeableOutput,
            o.name(),
            o.carrier(),
            bounds,
            &mut b,
        )?;
        for set in bounds.sets_of_size(1) {
            let u = o.base.unit(&set.as_slice()[0])?;
            file.units.push((set, b.id(&u)?));
        }
        let table = file_table(&file, &b);
        for (f, x, g) in operad_instances(&table, bounds) {
            let r = o.base.compose(&f, &x, &g)?;
            file.compose.push(ComposeRow {
                left: entry(&mut b, &f.set, &f.value)?,
                x: Some(x),
                right: entry(&mut b, &g.set, &g.value)?,
                y: None,
                result: b.id(&r.value)?,
            });
        }
        for set in bounds.sets() {
            for v in o.carrier().eval(&set).iter() {
                for x in set.iter() {
                    let f = Operand::new(set.clone(), v.clone());
                    let r = o.dact(x, &f)?;
                    file.dact.push(DactRow {
                        entry: entry(&mut b, &set, v)?,
                        x: Some(x.clone()),
                        result: b.id(&r.value)?,
                    });
                }
            }
        }
        file.structures = b.structures;
        Ok(file)
    }

    /// Tabulates `(S, ρ, η2)` over `bounds`.
    pub fn from_algebraic_entries_only(
        a: &AlgebraicEntriesOnly,
        bounds: &Bounds,
    ) -> Result<PresentationFile> {
        let mut b = Builder {
            structures: BTreeMap::new(),
        };
        let mut file = skeleton(
            Kind::AlgebraicEntriesOnly,
            &a.name,
            &a.species,
            bounds,
            &mut b,
        )?;
        tabulate_units(&mut file, &mut b, &a.eta2, bounds, 2)?;
        tabulate_product(&mut file, &mut b, &a.rho, bounds)?;
        file.structures = b.structures;
        Ok(file)
    }

    /// Tabulates `(S, ν, η1, D)` over `bounds`.
    pub fn from_algebraic_exchangeable_output(
        a: &AlgebraicExchangeableOutput,
        bounds: &Bounds,
    ) -> Result<PresentationFile> {
        let mut b = Builder {
            structures: BTreeMap::new(),
        };
        let mut file = skeleton(
            Kind::AlgebraicExchangeableOutput,
            &a.base.name,
            a.species(),
            bounds,
            &mut b,
        )?;
        tabulate_units(&mut file, &mut b, &a.base.eta1, bounds, 1)?;
        tabulate_product(&mut file, &mut b, &a.base.nu, bounds)?;
        for set in bounds.sets() {
            for f in a.d.source().eval(&set).iter() {
                let r = a.d.apply(&set, f)?;
                file.dact.push(DactRow {
                    entry: entry(&mut b, &set, f)?,
                    x: None,
                    result: b.id(&r)?,
                });
            }
        }
        file.structures = b.structures;
        Ok(file)
    }
}

fn tabulate_units(
    file: &mut PresentationFile,
    b: &mut Builder,
    eta: &NaturalMap,
    bounds: &Bounds,
    size: usize,
) -> Result<()> {
    for set in bounds.sets_of_size(size) {
        let u = eta.apply(&set, &Structure::Whole(set.clone()))?;
        file.units.push((set, b.id(&u)?));
    }
    Ok(())
}

fn tabulate_product(
    file: &mut PresentationFile,
    b: &mut Builder,
    map: &NaturalMap,
    bounds: &Bounds,
) -> Result<()> {
    for set in bounds.sets() {
        for v in map.source().eval(&set).iter() {
            let (f, g, x1, x2) = v.as_pair()?;
            let r = map.apply(&set, v)?;
            file.compose.push(ComposeRow {
                left: entry(b, x1, f)?,
                x: None,
                right: entry(b, x2, g)?,
                y: None,
                result: b.id(&r)?,
            });
        }
    }
    Ok(())
}

/// The carrier of a partially built file, for enumerating instances.
fn file_table(file: &PresentationFile, b: &Builder) -> Table {
    Table {
        name: file.name.clone(),
        pool: FiniteSet::new(file.atoms.iter().cloned()),
        max_size: file.max_size,
        carrier: file
            .carrier
            .iter()
            .map(|(set, ids)| {
                (
                    set.clone(),
                    ids.iter().map(|i| b.structures[i].clone()).collect(),
                )
            })
            .collect(),
        swaps: HashMap::new(),
        renames: HashMap::new(),
        reference: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::componential::{check_entries_only, check_exchangeable_output};
    use crate::translations::{check_same_entries_only, eo_to_exo};
    use crate::zoo::ZooModel;

    fn export(model: ZooModel, bounds: &Bounds) -> PresentationFile {
        PresentationFile::from_entries_only(&model.presentation().unwrap(), bounds).unwrap()
    }

    #[test]
    fn render_parse_is_bit_exact() {
        for model in [ZooModel::Comm, ZooModel::CyclicOrders] {
            let file = export(model, &Bounds::atoms(4, 4));
            let text = file.render();
            let back = PresentationFile::parse(&text).unwrap();
            assert_eq!(back, file);
            assert_eq!(back.render(), text);
        }
    }

    #[test]
    fn loaded_cyclic_orders_equal_the_model() {
        let model = ZooModel::CyclicOrders.presentation().unwrap();
        let bounds = Bounds::atoms(4, 4);
        let file = PresentationFile::from_entries_only(&model, &bounds).unwrap();
        let Loaded::EntriesOnly(p) = PresentationFile::parse(&file.render())
            .unwrap()
            .load()
            .unwrap()
        else {
            panic!("wrong kind");
        };
        let same = check_same_entries_only(&model, &p, &bounds);
        assert!(same.passed(), "{same}");
        let r = check_entries_only(&p, &bounds);
        assert!(r.passed(), "{r}");
        // Off the listed sets the carrier is relabelled: cyclic orders with a star.
        let x = FiniteSet::atoms(["a", "b"]).unwrap().with_star();
        assert_eq!(p.carrier.eval(&x), model.carrier.eval(&x));
    }

    #[test]
    fn loaded_exchangeable_output_passes() {
        let exo = eo_to_exo(&ZooModel::CyclicOrders.presentation().unwrap());
        let bounds = Bounds::atoms(3, 3);
        let file = PresentationFile::from_exchangeable_output(&exo, &bounds).unwrap();
        let Loaded::ExchangeableOutput(o) = file.load().unwrap() else {
            panic!("wrong kind");
        };
        let r = check_exchangeable_output(&o, &bounds);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn dangling_ids_are_semantic_errors() {
        let mut file = export(ZooModel::Comm, &Bounds::atoms(3, 3));
        file.units[0].1 = "0000000000000000".into();
        assert!(matches!(file.load(), Err(Error::Semantic(_))));
    }

    #[test]
    fn malformed_lines_are_parse_errors() {
        let text = export(ZooModel::Comm, &Bounds::atoms(3, 3)).render();
        let broken = text.replacen("unit {a,b}", "unit {b,a}", 1);
        assert!(matches!(
            PresentationFile::parse(&broken),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            PresentationFile::parse("hello"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
