//! Concrete finite cyclic operads: the commutative one, cyclic orders and
//! free cyclic operads on symmetric generators, each with an independent
//! rooted counterpart and a brute-force composition oracle.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use itertools::Itertools;

use crate::componential::{
    EntriesOnlyPresentation, ExchangeableOutputPresentation, OperadPresentation, Operand,
};
use crate::error::{Error, Result};
use crate::labels::{enumerate_partitions, Bijection, FiniteSet, Label};
use crate::natural::NaturalMap;
use crate::species::{Species, SpeciesImpl};
use crate::structure::{Structure, Term};

/// The models of the zoo, by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZooModel {
    Comm,
    CyclicOrders,
    FreeCyclic(Signature),
}

/// Generators of a free cyclic operad, each with its number of entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub generators: Vec<(String, usize)>,
    /// Carriers are tabulated up to this many leaves.
    pub size_cap: usize,
}

impl Signature {
    /// One ternary generator `t`.
    pub fn ternary(size_cap: usize) -> Signature {
        Signature {
            generators: vec![("t".to_string(), 3)],
            size_cap,
        }
    }
}

impl ZooModel {
    pub const NAMES: [&'static str; 3] = ["comm", "cyclic-orders", "free-cyclic"];

    /// `free-cyclic` stands for one ternary generator.
    pub fn parse(name: &str, size_cap: usize) -> Option<ZooModel> {
        match name {
            "comm" => Some(ZooModel::Comm),
            "cyclic-orders" => Some(ZooModel::CyclicOrders),
            "free-cyclic" => Some(ZooModel::FreeCyclic(Signature::ternary(size_cap))),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ZooModel::Comm => "comm",
            ZooModel::CyclicOrders => "cyclic-orders",
            ZooModel::FreeCyclic(_) => "free-cyclic",
        }
    }

    pub fn presentation(&self) -> Result<EntriesOnlyPresentation> {
        match self {
            ZooModel::Comm => Ok(comm_cyclic()),
            ZooModel::CyclicOrders => Ok(cyclic_orders()),
            ZooModel::FreeCyclic(sig) => free_cyclic(sig),
        }
    }

    pub fn rooted_view(&self) -> Result<RootedView> {
        match self {
            ZooModel::Comm => Ok(rooted_comm()),
            ZooModel::CyclicOrders => Ok(linear_orders()),
            ZooModel::FreeCyclic(sig) => rooted_trees(sig),
        }
    }

    /// Recomputes `f ₓ∘ᵧ g` by a strategy independent of the presentation.
    pub fn oracle_compose(
        &self,
        f: &Operand,
        x: &Label,
        g: &Operand,
        y: &Label,
    ) -> Result<Structure> {
        match self {
            ZooModel::Comm => {
                let r = f.set.remove(x).union(&g.set.remove(y));
                Ok(comm_structure("comm", &r))
            }
            ZooModel::CyclicOrders => splice_by_successors(&f.value, x, &g.value, y),
            ZooModel::FreeCyclic(sig) => graft_by_search(sig, f, x, g, y),
        }
    }
}

/// The rooted counterpart of a model, with the embedding that plants a
/// rooted structure on `X` as an unrooted one on `X ∪ {*X}`.
#[derive(Clone)]
pub struct RootedView {
    pub presentation: ExchangeableOutputPresentation,
    pub planting: NaturalMap,
}

fn check_labels(
    term_leaves: &[Label],
    set: &FiniteSet,
    species: &str,
    value: &Structure,
) -> Result<()> {
    let sorted: Vec<Label> = term_leaves.iter().cloned().sorted().collect();
    if sorted.as_slice() == set.as_slice() {
        Ok(())
    } else {
        Err(Error::malformed(species, set, value))
    }
}

fn relabel(term: &Term, sigma: &Bijection) -> Result<Term> {
    term.relabel(&|l| sigma.preimage_or_err(l))
}

// ---------------------------------------------------------------- Comm

fn comm_structure(tag: &str, set: &FiniteSet) -> Structure {
    Structure::model(
        tag,
        Term::node(tag, set.iter().cloned().map(Term::Leaf).collect()),
    )
}

/// One structure on every set with at least `min` elements.
struct Terminal {
    tag: &'static str,
    min: usize,
}

impl SpeciesImpl for Terminal {
    fn name(&self) -> String {
        match self.tag {
            "comm" => "Comm".into(),
            _ => "RComm".into(),
        }
    }

    fn structures(&self, set: &FiniteSet) -> Vec<Structure> {
        if set.len() >= self.min {
            vec![comm_structure(self.tag, set)]
        } else {
            vec![]
        }
    }

    fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure> {
        let term = value.as_model(self.tag)?;
        check_labels(&term.leaves(), sigma.codomain(), &self.name(), value)?;
        Ok(comm_structure(self.tag, sigma.domain()))
    }
}

/// The species with exactly one structure on every set of size at least two.
pub fn comm_species() -> Species {
    Species::custom(Terminal {
        tag: "comm",
        min: 2,
    })
}

/// The terminal constant-free cyclic operad.
pub fn comm_cyclic() -> EntriesOnlyPresentation {
    EntriesOnlyPresentation::new(
        "comm",
        comm_species(),
        |set| Ok(comm_structure("comm", set)),
        |f, x, g, y| {
            Ok(comm_structure(
                "comm",
                &f.set.remove(x).union(&g.set.remove(y)),
            ))
        },
    )
}

fn rooted_comm() -> RootedView {
    let carrier = Species::custom(Terminal {
        tag: "rcomm",
        min: 1,
    });
    let base = OperadPresentation::new(
        "rooted comm",
        carrier.clone(),
        |x| Ok(comm_structure("rcomm", &FiniteSet::singleton(x.clone()))),
        |f, x, g| Ok(comm_structure("rcomm", &f.set.remove(x).union(&g.set))),
    );
    let presentation = ExchangeableOutputPresentation::new(base, |_, f| Ok(f.value.clone()));
    let planting = NaturalMap::new("plant", carrier, comm_species().derivative(), |x, _| {
        Ok(comm_structure("comm", &x.with_star()))
    });
    RootedView {
        presentation,
        planting,
    }
}

// ---------------------------------------------------------- cyclic orders

fn cycle(mut labels: Vec<Label>) -> Structure {
    if let Some((i, _)) = labels.iter().enumerate().min_by_key(|(_, l)| *l) {
        labels.rotate_left(i);
    }
    Structure::model(
        "cyc",
        Term::node("cyc", labels.into_iter().map(Term::Leaf).collect()),
    )
}

fn cycle_labels(value: &Structure) -> Result<Vec<Label>> {
    Ok(value.as_model("cyc")?.leaves())
}

struct Cycles;

impl SpeciesImpl for Cycles {
    fn name(&self) -> String {
        "Cyc".into()
    }

    fn structures(&self, set: &FiniteSet) -> Vec<Structure> {
        let Some((first, rest)) = set.as_slice().split_first() else {
            return vec![];
        };
        if rest.is_empty() {
            return vec![];
        }
        rest.iter()
            .cloned()
            .permutations(rest.len())
            .map(|p| {
                let mut v = Vec::with_capacity(set.len());
                v.push(first.clone());
                v.extend(p);
                cycle(v)
            })
            .collect()
    }

    fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure> {
        let labels = cycle_labels(value)?;
        check_labels(&labels, sigma.codomain(), "Cyc", value)?;
        let moved: Result<Vec<Label>> = labels.iter().map(|l| sigma.preimage_or_err(l)).collect();
        Ok(cycle(moved?))
    }
}

/// Cyclic orders on sets with at least two elements.
pub fn cyclic_orders_species() -> Species {
    Species::custom(Cycles)
}

/// Splices `g` into `f`: `(x f1..fk) ₓ∘ᵧ (y g1..gm) = (g1..gm f1..fk)`.
fn splice(f: &Structure, x: &Label, g: &Structure, y: &Label) -> Result<Structure> {
    let mut fl = cycle_labels(f)?;
    let mut gl = cycle_labels(g)?;
    let i = fl
        .iter()
        .position(|l| l == x)
        .ok_or_else(|| Error::malformed("Cyc", x, f))?;
    let j = gl
        .iter()
        .position(|l| l == y)
        .ok_or_else(|| Error::malformed("Cyc", y, g))?;
    gl.rotate_left(j);
    fl.rotate_left(i);
    let mut out: Vec<Label> = gl[1..].to_vec();
    out.extend_from_slice(&fl[1..]);
    Ok(cycle(out))
}

/// The associative cyclic operad of cyclic orders.
pub fn cyclic_orders() -> EntriesOnlyPresentation {
    EntriesOnlyPresentation::new(
        "cyclic-orders",
        cyclic_orders_species(),
        |set| Ok(cycle(set.as_slice().to_vec())),
        |f, x, g, y| splice(&f.value, x, &g.value, y),
    )
}

/// The splice recomputed through successor maps.
fn splice_by_successors(f: &Structure, x: &Label, g: &Structure, y: &Label) -> Result<Structure> {
    let successors = |labels: &[Label]| -> HashMap<Label, Label> {
        (0..labels.len())
            .map(|i| (labels[i].clone(), labels[(i + 1) % labels.len()].clone()))
            .collect()
    };
    let sf = successors(&cycle_labels(f)?);
    let sg = successors(&cycle_labels(g)?);
    let after_x = sf
        .get(x)
        .ok_or_else(|| Error::malformed("Cyc", x, f))?
        .clone();
    let after_y = sg
        .get(y)
        .ok_or_else(|| Error::malformed("Cyc", y, g))?
        .clone();
    let mut next: HashMap<Label, Label> = HashMap::new();
    for (a, b) in sf.iter().filter(|(a, _)| *a != x) {
        next.insert(a.clone(), if b == x { after_y.clone() } else { b.clone() });
    }
    for (a, b) in sg.iter().filter(|(a, _)| *a != y) {
        next.insert(a.clone(), if b == y { after_x.clone() } else { b.clone() });
    }
    let start = next
        .keys()
        .min()
        .cloned()
        .ok_or_else(|| Error::precondition("empty splice"))?;
    let mut out = vec![start.clone()];
    let mut cur = next[&start].clone();
    while cur != start {
        out.push(cur.clone());
        cur = next[&cur].clone();
        if out.len() > next.len() {
            return Err(Error::precondition("successor map is not a single cycle"));
        }
    }
    Ok(cycle(out))
}

fn linear(labels: Vec<Label>) -> Structure {
    Structure::model(
        "lin",
        Term::node("lin", labels.into_iter().map(Term::Leaf).collect()),
    )
}

struct LinearOrders;

impl SpeciesImpl for LinearOrders {
    fn name(&self) -> String {
        "Lin".into()
    }

    fn structures(&self, set: &FiniteSet) -> Vec<Structure> {
        if set.is_empty() {
            return vec![];
        }
        set.iter()
            .cloned()
            .permutations(set.len())
            .map(linear)
            .collect()
    }

    fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure> {
        let labels = value.as_model("lin")?.leaves();
        check_labels(&labels, sigma.codomain(), "Lin", value)?;
        let moved: Result<Vec<Label>> = labels.iter().map(|l| sigma.preimage_or_err(l)).collect();
        Ok(linear(moved?))
    }
}

/// Linear orders with insertion, and `D_x` rotating `x` into the output.
fn linear_orders() -> RootedView {
    let carrier = Species::custom(LinearOrders);
    let base = OperadPresentation::new(
        "linear orders",
        carrier.clone(),
        |x| Ok(linear(vec![x.clone()])),
        |f, x, g| {
            let fl = f.value.as_model("lin")?.leaves();
            let gl = g.value.as_model("lin")?.leaves();
            let mut out = Vec::with_capacity(fl.len() + gl.len());
            for l in fl {
                if &l == x {
                    out.extend(gl.iter().cloned());
                } else {
                    out.push(l);
                }
            }
            Ok(linear(out))
        },
    );
    let presentation = ExchangeableOutputPresentation::new(base, |x, f| {
        // l1..l(i-1) x l(i+1)..lk  ↦  l(i+1)..lk x l1..l(i-1)
        let l = f.value.as_model("lin")?.leaves();
        let i = l
            .iter()
            .position(|a| a == x)
            .ok_or_else(|| Error::malformed("Lin", x, &f.value))?;
        let mut out: Vec<Label> = l[i + 1..].to_vec();
        out.push(x.clone());
        out.extend_from_slice(&l[..i]);
        Ok(linear(out))
    });
    let planting = NaturalMap::new(
        "plant",
        carrier,
        cyclic_orders_species().derivative(),
        |x, v| {
            let mut labels = vec![x.star()];
            labels.extend(v.as_model("lin")?.leaves());
            Ok(cycle(labels))
        },
    );
    RootedView {
        presentation,
        planting,
    }
}

// ------------------------------------------------------------ free trees

/// Free cyclic operads on symmetric generators with at least three entries.
///
/// Structures are unrooted trees whose leaves are the labels and whose
/// internal vertices carry generators of matching degree. The canonical form
/// hangs the tree from its minimal leaf and sorts children.
pub fn free_cyclic(sig: &Signature) -> Result<EntriesOnlyPresentation> {
    validate(sig)?;
    let carrier = Species::custom(FreeTrees { sig: sig.clone() });
    let cap = sig.size_cap;
    Ok(EntriesOnlyPresentation::new(
        "free-cyclic",
        carrier,
        |set| match set.as_slice() {
            [a, b] => Ok(tree(a.clone(), Term::Leaf(b.clone()))),
            _ => Err(Error::precondition(format!(
                "{set} is not a two-element set"
            ))),
        },
        move |f, x, g, y| {
            let size = f.set.len() + g.set.len() - 2;
            if size > cap {
                return Err(Error::Truncated(format!("a tree with {size} leaves")));
            }
            graft(&f.value, x, &g.value, y)
        },
    ))
}

fn validate(sig: &Signature) -> Result<()> {
    if sig.generators.is_empty() {
        return Err(Error::precondition(
            "a signature needs at least one generator",
        ));
    }
    for (name, arity) in &sig.generators {
        if *arity < 3 {
            return Err(Error::precondition(format!(
                "generator {name} has {arity} entries; at least three are needed for finite carriers"
            )));
        }
        Label::atom(name)
            .map_err(|_| Error::precondition(format!("bad generator name {name:?}")))?;
    }
    Ok(())
}

fn tree(root: Label, body: Term) -> Structure {
    Structure::model("tree", Term::node("tree", vec![Term::Leaf(root), body]))
}

fn planted(body: Term) -> Structure {
    Structure::model("rtree", Term::node("rtree", vec![body]))
}

/// All rooted bodies whose leaves are exactly `set`.
fn bodies(set: &FiniteSet, sig: &Signature) -> Vec<Term> {
    if set.len() == 1 {
        return vec![Term::Leaf(set.as_slice()[0].clone())];
    }
    let partitions = enumerate_partitions(set);
    let mut out = Vec::new();
    for (name, arity) in &sig.generators {
        for blocks in partitions.iter().filter(|p| p.len() == arity - 1) {
            let options: Vec<Vec<Term>> = blocks.iter().map(|b| bodies(b, sig)).collect();
            for choice in options.iter().multi_cartesian_product() {
                let mut children: Vec<Term> = choice.into_iter().cloned().collect();
                children.sort();
                out.push(Term::node(name, children));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

struct FreeTrees {
    sig: Signature,
}

impl SpeciesImpl for FreeTrees {
    fn name(&self) -> String {
        "Tree".into()
    }

    fn structures(&self, set: &FiniteSet) -> Vec<Structure> {
        if set.len() < 2 || set.len() > self.sig.size_cap {
            return vec![];
        }
        let root = set.as_slice()[0].clone();
        bodies(&set.remove(&root), &self.sig)
            .into_iter()
            .map(|b| tree(root.clone(), b))
            .collect()
    }

    fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure> {
        let term = value.as_model("tree")?;
        check_labels(&term.leaves(), sigma.codomain(), "Tree", value)?;
        TreeGraph::from_unrooted(&relabel(term, sigma)?)?.unrooted()
    }
}

struct RootedTrees {
    sig: Signature,
}

impl SpeciesImpl for RootedTrees {
    fn name(&self) -> String {
        "RTree".into()
    }

    fn structures(&self, set: &FiniteSet) -> Vec<Structure> {
        if set.is_empty() || set.len() + 1 > self.sig.size_cap {
            return vec![];
        }
        bodies(set, &self.sig).into_iter().map(planted).collect()
    }

    fn transport(&self, sigma: &Bijection, value: &Structure) -> Result<Structure> {
        let body = planted_body(value)?;
        check_labels(&body.leaves(), sigma.codomain(), "RTree", value)?;
        Ok(planted(sort_body(&relabel(body, sigma)?)))
    }
}

fn planted_body(value: &Structure) -> Result<&Term> {
    match value.as_model("rtree")? {
        Term::Node(_, children) if children.len() == 1 => Ok(&children[0]),
        _ => Err(Error::malformed("RTree", "its leaves", value)),
    }
}

fn sort_body(term: &Term) -> Term {
    match term {
        Term::Leaf(_) => term.clone(),
        Term::Node(name, children) => {
            let mut c: Vec<Term> = children.iter().map(sort_body).collect();
            c.sort();
            Term::Node(name.clone(), c)
        }
    }
}

fn substitute(term: &Term, x: &Label, replacement: &Term) -> Term {
    match term {
        Term::Leaf(l) if l == x => replacement.clone(),
        Term::Leaf(_) => term.clone(),
        Term::Node(name, children) => Term::Node(
            name.clone(),
            children
                .iter()
                .map(|c| substitute(c, x, replacement))
                .collect(),
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Vertex {
    Leaf(Label),
    Inner(Arc<str>),
    Root,
}

/// A tree as an adjacency list.
#[derive(Clone, Debug, Default)]
struct TreeGraph {
    vertices: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
}

impl TreeGraph {
    fn add(&mut self, v: Vertex) -> usize {
        self.vertices.push(v);
        self.adj.push(Vec::new());
        self.vertices.len() - 1
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn hang(&mut self, body: &Term, parent: usize) {
        match body {
            Term::Leaf(l) => {
                let v = self.add(Vertex::Leaf(l.clone()));
                self.link(parent, v);
            }
            Term::Node(name, children) => {
                let v = self.add(Vertex::Inner(name.clone()));
                self.link(parent, v);
                for c in children {
                    self.hang(c, v);
                }
            }
        }
    }

    fn from_unrooted(term: &Term) -> Result<TreeGraph> {
        let bad = || Error::malformed("Tree", "its leaves", term);
        let Term::Node(_, parts) = term else {
            return Err(bad());
        };
        let [Term::Leaf(root), body] = parts.as_slice() else {
            return Err(bad());
        };
        let mut g = TreeGraph::default();
        let r = g.add(Vertex::Leaf(root.clone()));
        g.hang(body, r);
        Ok(g)
    }

    fn from_planted(value: &Structure) -> Result<TreeGraph> {
        let mut g = TreeGraph::default();
        let r = g.add(Vertex::Root);
        g.hang(planted_body(value)?, r);
        Ok(g)
    }

    fn find(&self, v: &Vertex) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    fn body(&self, v: usize, parent: usize) -> Term {
        match &self.vertices[v] {
            Vertex::Leaf(l) => Term::Leaf(l.clone()),
            Vertex::Root => unreachable!("the root is never below another vertex"),
            Vertex::Inner(name) => {
                let mut children: Vec<Term> = self.adj[v]
                    .iter()
                    .filter(|&&c| c != parent)
                    .map(|&c| self.body(c, v))
                    .collect();
                children.sort();
                Term::Node(name.clone(), children)
            }
        }
    }

    /// The canonical unrooted form, hung from the minimal leaf.
    fn unrooted(&self) -> Result<Structure> {
        let (r, root) = self
            .vertices
            .iter()
            .enumerate()
            .filter_map(|(i, v)| match v {
                Vertex::Leaf(l) => Some((i, l)),
                _ => None,
            })
            .min_by_key(|(_, l)| *l)
            .ok_or_else(|| Error::precondition("a tree without leaves"))?;
        let n = self.adj[r][0];
        Ok(tree(root.clone(), self.body(n, r)))
    }

    /// The planted form, hung from the root vertex.
    fn planted(&self) -> Result<Structure> {
        let r = self
            .find(&Vertex::Root)
            .ok_or_else(|| Error::precondition("a planted tree without root"))?;
        let n = self.adj[r][0];
        Ok(planted(self.body(n, r)))
    }

    /// Leaf sets of the branches around every internal vertex.
    fn signature(&self) -> BTreeSet<(Arc<str>, BTreeSet<BTreeSet<Label>>)> {
        let mut out = BTreeSet::new();
        for (v, vertex) in self.vertices.iter().enumerate() {
            if let Vertex::Inner(name) = vertex {
                let branches = self.adj[v]
                    .iter()
                    .map(|&c| self.leaves_beyond(c, v))
                    .collect();
                out.insert((name.clone(), branches));
            }
        }
        out
    }

    fn leaves_beyond(&self, v: usize, parent: usize) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        let mut stack = vec![(v, parent)];
        while let Some((w, from)) = stack.pop() {
            if let Vertex::Leaf(l) = &self.vertices[w] {
                out.insert(l.clone());
            }
            for &n in &self.adj[w] {
                if n != from {
                    stack.push((n, w));
                }
            }
        }
        out
    }

    fn leaf_labels(&self) -> BTreeSet<Label> {
        self.vertices
            .iter()
            .filter_map(|v| match v {
                Vertex::Leaf(l) => Some(l.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Joins the neighbour of leaf `x` in `f` to the neighbour of leaf `y` in `g`.
fn graft(f: &Structure, x: &Label, g: &Structure, y: &Label) -> Result<Structure> {
    let gf = TreeGraph::from_unrooted(f.as_model("tree")?)?;
    let gg = TreeGraph::from_unrooted(g.as_model("tree")?)?;
    let ix = gf
        .find(&Vertex::Leaf(x.clone()))
        .ok_or_else(|| Error::malformed("Tree", x, f))?;
    let iy = gg
        .find(&Vertex::Leaf(y.clone()))
        .ok_or_else(|| Error::malformed("Tree", y, g))?;
    let offset = gf.vertices.len();
    let (p, q) = (gf.adj[ix][0], gg.adj[iy][0] + offset);
    let removed = [ix, iy + offset];
    let all: Vec<(Vertex, Vec<usize>)> = gf
        .vertices
        .iter()
        .cloned()
        .zip(gf.adj.iter().cloned())
        .chain(
            gg.vertices.iter().cloned().zip(
                gg.adj
                    .iter()
                    .map(|a| a.iter().map(|n| n + offset).collect()),
            ),
        )
        .collect();
    let mut index = vec![usize::MAX; all.len()];
    let mut out = TreeGraph::default();
    for (i, (v, _)) in all.iter().enumerate() {
        if !removed.contains(&i) {
            index[i] = out.add(v.clone());
        }
    }
    for (i, (_, adj)) in all.iter().enumerate() {
        for &n in adj {
            if i < n && !removed.contains(&i) && !removed.contains(&n) {
                out.link(index[i], index[n]);
            }
        }
    }
    out.link(index[p], index[q]);
    out.unrooted()
}

/// The graft recomputed by searching the carrier for the tree whose vertex
/// branches are those of `f` and `g` with `x` and `y` expanded.
fn graft_by_search(
    sig: &Signature,
    f: &Operand,
    x: &Label,
    g: &Operand,
    y: &Label,
) -> Result<Structure> {
    let gf = TreeGraph::from_unrooted(f.value.as_model("tree")?)?;
    let gg = TreeGraph::from_unrooted(g.value.as_model("tree")?)?;
    let rest_f: BTreeSet<Label> = gf.leaf_labels().into_iter().filter(|l| l != x).collect();
    let rest_g: BTreeSet<Label> = gg.leaf_labels().into_iter().filter(|l| l != y).collect();
    let expand = |sig_set: BTreeSet<(Arc<str>, BTreeSet<BTreeSet<Label>>)>,
                  hole: &Label,
                  fill: &BTreeSet<Label>| {
        sig_set
            .into_iter()
            .map(|(name, branches)| {
                let branches = branches
                    .into_iter()
                    .map(|b| {
                        if b.contains(hole) {
                            b.into_iter()
                                .filter(|l| l != hole)
                                .chain(fill.iter().cloned())
                                .collect()
                        } else {
                            b
                        }
                    })
                    .collect();
                (name, branches)
            })
            .collect::<BTreeSet<_>>()
    };
    let mut expected = expand(gf.signature(), x, &rest_g);
    expected.extend(expand(gg.signature(), y, &rest_f));
    let target = FiniteSet::new(rest_f.iter().chain(rest_g.iter()).cloned());
    let carrier = Species::custom(FreeTrees { sig: sig.clone() });
    let matches: Vec<Structure> = carrier
        .eval(&target)
        .iter()
        .filter(|t| {
            TreeGraph::from_unrooted(t.as_model("tree").expect("tree"))
                .map(|gt| gt.signature() == expected)
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    match matches.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(Error::precondition(format!(
            "{} trees on {target} match the expected branches",
            matches.len()
        ))),
    }
}

/// Planted trees: grafting by substitution, `D_x` by rerooting at leaf `x`.
fn rooted_trees(sig: &Signature) -> Result<RootedView> {
    validate(sig)?;
    let carrier = Species::custom(RootedTrees { sig: sig.clone() });
    let cap = sig.size_cap;
    let base = OperadPresentation::new(
        "planted trees",
        carrier.clone(),
        |x| Ok(planted(Term::Leaf(x.clone()))),
        move |f, x, g| {
            let size = f.set.len() + g.set.len();
            if size > cap {
                return Err(Error::Truncated(format!("a tree with {size} leaves")));
            }
            let body = substitute(planted_body(&f.value)?, x, planted_body(&g.value)?);
            Ok(planted(sort_body(&body)))
        },
    );
    let presentation = ExchangeableOutputPresentation::new(base, |x, f| {
        let mut graph = TreeGraph::from_planted(&f.value)?;
        let leaf = graph
            .find(&Vertex::Leaf(x.clone()))
            .ok_or_else(|| Error::malformed("RTree", x, &f.value))?;
        let root = graph.find(&Vertex::Root).expect("planted");
        graph.vertices[root] = Vertex::Leaf(x.clone());
        graph.vertices[leaf] = Vertex::Root;
        graph.planted()
    });
    let free = Species::custom(FreeTrees { sig: sig.clone() });
    let planting = NaturalMap::new("plant", carrier, free.derivative(), |x, v| {
        let mut graph = TreeGraph::from_planted(v)?;
        let root = graph.find(&Vertex::Root).expect("planted");
        graph.vertices[root] = Vertex::Leaf(x.star());
        graph.unrooted()
    });
    Ok(RootedView {
        presentation,
        planting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Bounds;
    use crate::componential::{check_entries_only, check_exchangeable_output};
    use crate::labels::atom_pool;

    fn set(n: usize) -> FiniteSet {
        FiniteSet::new(atom_pool(n))
    }

    fn atoms(names: &[&str]) -> FiniteSet {
        FiniteSet::atoms(names.iter().copied()).unwrap()
    }

    fn l(name: &str) -> Label {
        Label::atom(name).unwrap()
    }

    #[test]
    fn carrier_counts() {
        let cyc = cyclic_orders_species();
        let counts: Vec<usize> = (0..=4).map(|n| cyc.count(&set(n))).collect();
        assert_eq!(counts, vec![0, 0, 1, 2, 6]);
        let comm = comm_species();
        assert_eq!(
            (0..=3).map(|n| comm.count(&set(n))).collect::<Vec<_>>(),
            vec![0, 0, 1, 1]
        );
        // (2n-5)!! unrooted binary trees with n labelled leaves
        let trees = free_cyclic(&Signature::ternary(5)).unwrap().carrier;
        assert_eq!(
            (2..=5).map(|n| trees.count(&set(n))).collect::<Vec<_>>(),
            vec![1, 1, 3, 15]
        );
    }

    #[test]
    fn arity_two_generators_are_rejected() {
        let sig = Signature {
            generators: vec![("u".into(), 2)],
            size_cap: 4,
        };
        assert!(matches!(free_cyclic(&sig), Err(Error::Precondition(_))));
    }

    #[test]
    fn splice_agrees_with_the_successor_oracle() {
        let p = cyclic_orders();
        for fs in [atoms(&["a", "b", "c"]), atoms(&["a", "b"])] {
            for gs in [atoms(&["c", "d", "e"]), atoms(&["d", "e"])] {
                for f in p.carrier.eval(&fs).iter() {
                    for g in p.carrier.eval(&gs).iter() {
                        let (fo, go) = (
                            Operand::new(fs.clone(), f.clone()),
                            Operand::new(gs.clone(), g.clone()),
                        );
                        for x in fs.iter() {
                            for y in gs.iter() {
                                let Ok(r) = p.compose(&fo, x, &go, y) else {
                                    continue;
                                };
                                let o = ZooModel::CyclicOrders
                                    .oracle_compose(&fo, x, &go, y)
                                    .unwrap();
                                assert_eq!(r.value, o);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn grafting_two_stars_gives_a_four_leaf_tree() {
        let model = ZooModel::FreeCyclic(Signature::ternary(5));
        let p = model.presentation().unwrap();
        let f = Operand::new(
            atoms(&["a", "b", "x"]),
            p.carrier.eval(&atoms(&["a", "b", "x"]))[0].clone(),
        );
        let g = Operand::new(
            atoms(&["c", "d", "y"]),
            p.carrier.eval(&atoms(&["c", "d", "y"]))[0].clone(),
        );
        let r = p.compose(&f, &l("x"), &g, &l("y")).unwrap();
        assert_eq!(r.set, atoms(&["a", "b", "c", "d"]));
        assert_eq!(r.value.to_string(), "tree:tree(a t(b t(c d)))");
        assert_eq!(
            model.oracle_compose(&f, &l("x"), &g, &l("y")).unwrap(),
            r.value
        );
    }

    #[test]
    fn graft_agrees_with_the_search_oracle() {
        let model = ZooModel::FreeCyclic(Signature::ternary(5));
        let p = model.presentation().unwrap();
        let sets = [
            atoms(&["a", "b"]),
            atoms(&["a", "b", "c"]),
            atoms(&["a", "b", "c", "d"]),
        ];
        let others = [atoms(&["d", "e"]), atoms(&["c", "d", "e"])];
        for fs in &sets {
            for gs in &others {
                for f in p.carrier.eval(fs).iter() {
                    for g in p.carrier.eval(gs).iter() {
                        let (fo, go) = (
                            Operand::new(fs.clone(), f.clone()),
                            Operand::new(gs.clone(), g.clone()),
                        );
                        for x in fs.iter() {
                            for y in gs.iter() {
                                let Ok(r) = p.compose(&fo, x, &go, y) else {
                                    continue;
                                };
                                assert_eq!(r.value, model.oracle_compose(&fo, x, &go, y).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn zoo_models_pass_their_axioms() {
        for (model, size) in [
            (ZooModel::Comm, 4),
            (ZooModel::CyclicOrders, 4),
            (ZooModel::FreeCyclic(Signature::ternary(4)), 4),
        ] {
            let p = model.presentation().unwrap();
            let r = check_entries_only(&p, &Bounds::atoms(size, size));
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn rooted_views_pass_their_axioms() {
        for model in [
            ZooModel::Comm,
            ZooModel::CyclicOrders,
            ZooModel::FreeCyclic(Signature::ternary(4)),
        ] {
            let view = model.rooted_view().unwrap();
            let r = check_exchangeable_output(&view.presentation, &Bounds::atoms(3, 3));
            assert!(r.passed(), "{r}");
            let nat = view.planting.check_naturality(&Bounds::atoms(3, 3));
            assert!(nat.passed(), "{nat}");
            let bij = view.planting.check_bijective(&Bounds::atoms(3, 3));
            assert!(bij.passed(), "{bij}");
        }
    }

    #[test]
    fn rerooting_a_bare_edge_keeps_the_unit() {
        let view = ZooModel::FreeCyclic(Signature::ternary(4))
            .rooted_view()
            .unwrap();
        let id = view.presentation.base.unit_operand(&l("a")).unwrap();
        assert_eq!(view.presentation.dact(&l("a"), &id).unwrap(), id);
    }

    #[test]
    fn transport_is_canonical() {
        let trees = free_cyclic(&Signature::ternary(5)).unwrap().carrier;
        let x = set(4);
        let sigma = Bijection::from_pairs([
            (l("a"), l("d")),
            (l("b"), l("a")),
            (l("c"), l("b")),
            (l("d"), l("c")),
        ])
        .unwrap();
        let images: BTreeSet<Structure> = trees
            .eval(&x)
            .iter()
            .map(|t| trees.transport(&sigma, t).unwrap())
            .collect();
        let expected: BTreeSet<Structure> = trees.eval(&x).iter().cloned().collect();
        assert_eq!(images, expected);
    }
}
