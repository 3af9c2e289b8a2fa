//! Finite groups of graph automorphisms.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Subdivision, Vertex};

/// Default bound on the order of a closed group.
pub const DEFAULT_GROUP_CAP: usize = 1024;

/// Index of a group element. The identity is always element `0`.
pub type Element = usize;

/// A finite group of automorphisms of a graph with a chosen generating set
/// and its word metric.
///
/// Elements act on the left: `mul(a, b)` applies `b` first, then `a`.
#[derive(Clone, Debug)]
pub struct GroupModel {
    n: usize,
    perms: Vec<Vec<u32>>,
    generators: Vec<Element>,
    table: Vec<u32>,
    inverse: Vec<Element>,
    word_length: Vec<u32>,
}

impl GroupModel {
    /// The trivial group on `n` points.
    pub fn trivial(n: usize) -> Self {
        GroupModel {
            n,
            perms: vec![(0..n as u32).collect()],
            generators: Vec::new(),
            table: vec![0],
            inverse: vec![0],
            word_length: vec![0],
        }
    }

    /// Closes a set of permutations under composition. Errors unless every
    /// generator is an automorphism of `g` preserving the cone vertices, or
    /// when the closure exceeds `cap` elements.
    pub fn close(g: &Graph, generators: &[Vec<Vertex>], cap: usize) -> Result<Self> {
        let n = g.vertex_count();
        let mut gens = Vec::with_capacity(generators.len());
        for (index, p) in generators.iter().enumerate() {
            validate_permutation(index, p, n)?;
            for e in g.edges() {
                if !g.has_edge(p[e.lo()], p[e.hi()]) {
                    return Err(Error::NotAutomorphism { index, u: e.lo(), v: e.hi() });
                }
            }
            if g.vertices().any(|v| g.is_cone(v) != g.is_cone(p[v])) {
                return Err(Error::ConeNotPreserved(index));
            }
            gens.push(p.iter().map(|&x| x as u32).collect::<Vec<u32>>());
        }
        Self::from_permutations(n, gens, cap)
    }

    fn from_permutations(n: usize, gens: Vec<Vec<u32>>, cap: usize) -> Result<Self> {
        let identity: Vec<u32> = (0..n as u32).collect();
        let mut perms = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, Element> = HashMap::from([(identity, 0)]);
        let mut generators = Vec::new();
        for p in &gens {
            let id = match index.get(p) {
                Some(&i) => i,
                None => {
                    let i = perms.len();
                    index.insert(p.clone(), i);
                    perms.push(p.clone());
                    i
                }
            };
            if !generators.contains(&id) {
                generators.push(id);
            }
        }
        // breadth-first closure under right multiplication by generators
        let mut queue: VecDeque<Element> = (0..perms.len()).collect();
        while let Some(a) = queue.pop_front() {
            for gen in &gens {
                let prod: Vec<u32> = gen.iter().map(|&x| perms[a][x as usize]).collect();
                if !index.contains_key(&prod) {
                    if perms.len() == cap {
                        return Err(Error::CapExceeded { what: "group order", cap });
                    }
                    let i = perms.len();
                    index.insert(prod.clone(), i);
                    perms.push(prod);
                    queue.push_back(i);
                }
            }
        }
        let order = perms.len();
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let prod: Vec<u32> = perms[b].iter().map(|&x| perms[a][x as usize]).collect();
                table[a * order + b] = index[&prod] as u32;
            }
        }
        let inverse = (0..order).map(|a| (0..order).find(|&b| table[a * order + b] == 0).unwrap()).collect();
        let mut group = GroupModel { n, perms, generators, table, inverse, word_length: Vec::new() };
        group.word_length = group.compute_word_lengths();
        Ok(group)
    }

    fn compute_word_lengths(&self) -> Vec<u32> {
        let mut len = vec![u32::MAX; self.order()];
        len[0] = 0;
        let mut steps: Vec<Element> = self.generators.clone();
        steps.extend(self.generators.iter().map(|&s| self.inverse[s]));
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &s in &steps {
                let b = self.mul(a, s);
                if len[b] == u32::MAX {
                    len[b] = len[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        len
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order()
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// The permutation of element `a`.
    pub fn permutation(&self, a: Element) -> Vec<Vertex> {
        self.perms[a].iter().map(|&x| x as usize).collect()
    }

    /// Element with the given permutation, if present.
    pub fn find(&self, perm: &[Vertex]) -> Option<Element> {
        self.elements().find(|&a| self.perms[a].iter().zip(perm).all(|(&x, &y)| x as usize == y))
    }

    /// `a * b`: apply `b`, then `a`.
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order() + b] as Element
    }

    pub fn inv(&self, a: Element) -> Element {
        self.inverse[a]
    }

    /// Word length with respect to the symmetrized generating set.
    pub fn word_length(&self, a: Element) -> u32 {
        self.word_length[a]
    }

    /// Left-invariant word metric `|a^-1 b|`.
    pub fn distance(&self, a: Element, b: Element) -> u32 {
        self.word_length[self.mul(self.inv(a), b)]
    }

    /// Closed ball of the word metric.
    pub fn ball(&self, center: Element, radius: u32) -> Vec<Element> {
        self.elements().filter(|&b| self.distance(center, b) <= radius).collect()
    }

    pub fn act(&self, a: Element, v: Vertex) -> Vertex {
        self.perms[a][v] as Vertex
    }

    pub fn act_edge(&self, a: Element, e: Edge) -> Edge {
        Edge::new(self.act(a, e.lo()), self.act(a, e.hi()))
    }

    pub fn act_pair(&self, a: Element, (u, v): (Vertex, Vertex)) -> (Vertex, Vertex) {
        (self.act(a, u), self.act(a, v))
    }

    /// Isotropy group of an object under an action.
    pub fn stabilizer_of<T: PartialEq>(&self, x: &T, act: impl Fn(Element, &T) -> T) -> BTreeSet<Element> {
        self.elements().filter(|&a| act(a, x) == *x).collect()
    }

    pub fn vertex_stabilizer(&self, v: Vertex) -> BTreeSet<Element> {
        self.stabilizer_of(&v, |a, &v| self.act(a, v))
    }

    /// Stabilizer of an edge as a set (endpoints may be swapped).
    pub fn edge_stabilizer(&self, e: Edge) -> BTreeSet<Element> {
        self.stabilizer_of(&e, |a, &e| self.act_edge(a, e))
    }

    /// Stabilizer of an ordered pair: both points fixed.
    pub fn pair_stabilizer(&self, u: Vertex, v: Vertex) -> BTreeSet<Element> {
        self.stabilizer_of(&(u, v), |a, &p| self.act_pair(a, p))
    }

    /// Stabilizer of an unordered pair: the points may be swapped.
    pub fn unordered_pair_stabilizer(&self, u: Vertex, v: Vertex) -> BTreeSet<Element> {
        let key = |(x, y): (Vertex, Vertex)| (x.min(y), x.max(y));
        self.stabilizer_of(&key((u, v)), |a, &p| key(self.act_pair(a, p)))
    }

    /// Partition of `objects` into orbits, each sorted, ordered by least
    /// element. Objects whose images fall outside `objects` still join the
    /// orbit of their preimage.
    pub fn orbits<T: Ord + Clone>(&self, objects: &[T], act: impl Fn(Element, &T) -> T) -> Vec<Vec<T>> {
        let mut remaining: BTreeSet<T> = objects.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some(first) = remaining.pop_first() {
            let mut orbit: BTreeSet<T> = self.elements().map(|a| act(a, &first)).collect();
            orbit.insert(first);
            for x in &orbit {
                remaining.remove(x);
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    /// True if `set` is closed under products and contains the identity.
    pub fn is_subgroup(&self, set: &BTreeSet<Element>) -> bool {
        set.contains(&0) && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Subgroup generated by a set of elements.
    pub fn generated(&self, gens: impl IntoIterator<Item = Element>) -> BTreeSet<Element> {
        let gens: Vec<Element> = gens.into_iter().collect();
        let mut set = BTreeSet::from([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &s in &gens {
                let b = self.mul(a, s);
                if set.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        set
    }

    /// `a H a^-1`.
    pub fn conjugate(&self, a: Element, h: &BTreeSet<Element>) -> BTreeSet<Element> {
        let ai = self.inv(a);
        h.iter().map(|&x| self.mul(self.mul(a, x), ai)).collect()
    }

    /// All subgroups of `h`, found by adjoining one element at a time.
    pub fn subgroups_of(&self, h: &BTreeSet<Element>) -> Vec<BTreeSet<Element>> {
        let mut found: BTreeSet<BTreeSet<Element>> = BTreeSet::from([BTreeSet::from([0])]);
        let mut frontier: Vec<BTreeSet<Element>> = vec![BTreeSet::from([0])];
        while let Some(k) = frontier.pop() {
            for &x in h {
                if k.contains(&x) {
                    continue;
                }
                let bigger = self.generated(k.iter().copied().chain([x]));
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        found.into_iter().collect()
    }

    /// The same group acting on the barycentric subdivision, element for
    /// element.
    pub fn lift(&self, sub: &Subdivision) -> GroupModel {
        let total = sub.graph().vertex_count();
        let perms: Vec<Vec<u32>> = self
            .perms
            .iter()
            .map(|p| {
                (0..total)
                    .map(|v| {
                        if v < sub.original_count() {
                            p[v]
                        } else {
                            let e = sub.edge_of(v).expect("midpoint");
                            let image = Edge::new(p[e.lo()] as usize, p[e.hi()] as usize);
                            sub.midpoint(image).expect("automorphism maps edges to edges") as u32
                        }
                    })
                    .collect()
            })
            .collect();
        GroupModel {
            n: total,
            perms,
            generators: self.generators.clone(),
            table: self.table.clone(),
            inverse: self.inverse.clone(),
            word_length: self.word_length.clone(),
        }
    }
}

fn validate_permutation(index: usize, p: &[Vertex], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::BadPermutation { index, reason: format!("length {} instead of {n}", p.len()) });
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::BadPermutation { index, reason: format!("image {x} repeated or out of range") });
        }
    }
    Ok(())
}

/// Closes generator permutations into a [`GroupModel`].
pub fn close_group(g: &Graph, generator_perms: &[Vec<Vertex>], cap: usize) -> Result<GroupModel> {
    GroupModel::close(g, generator_perms, cap)
}

/// On-disk action format: either a bare array of generator permutations
/// or an object with a `generators` field.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionDocument {
    Bare(Vec<Vec<Vertex>>),
    Named { generators: Vec<Vec<Vertex>> },
}

impl ActionDocument {
    pub fn generators(&self) -> &[Vec<Vertex>] {
        match self {
            ActionDocument::Bare(g) | ActionDocument::Named { generators: g } => g,
        }
    }
}

/// A family of subgroups, queried by membership only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupFamily {
    TrivialOnly,
    AllSubgroups,
    /// Explicit list, validated to be closed under conjugation and under
    /// passing to subgroups.
    Explicit(Vec<BTreeSet<Element>>),
    /// Subgroups fixing at least one of the listed points.
    FixingSomeOf(Vec<Vertex>),
}

impl SubgroupFamily {
    /// Validates and builds an explicit family.
    pub fn explicit(group: &GroupModel, members: Vec<BTreeSet<Element>>) -> Result<Self> {
        let set: BTreeSet<BTreeSet<Element>> = members.iter().cloned().collect();
        for h in &members {
            if !group.is_subgroup(h) {
                return Err(Error::NotSubgroup(format!("{h:?}")));
            }
            for a in group.elements() {
                if !set.contains(&group.conjugate(a, h)) {
                    return Err(Error::Parameter(format!("family not closed under conjugation at {h:?}")));
                }
            }
            for k in group.subgroups_of(h) {
                if !set.contains(&k) {
                    return Err(Error::Parameter(format!("family not closed under subgroups: {k:?} missing")));
                }
            }
        }
        Ok(SubgroupFamily::Explicit(set.into_iter().collect()))
    }

    pub fn contains(&self, group: &GroupModel, h: &BTreeSet<Element>) -> bool {
        match self {
            SubgroupFamily::TrivialOnly => h.len() == 1,
            SubgroupFamily::AllSubgroups => true,
            SubgroupFamily::Explicit(list) => list.contains(h),
            SubgroupFamily::FixingSomeOf(points) => {
                points.iter().any(|&p| h.iter().all(|&a| group.act(a, p) == p))
            }
        }
    }
}

/// Outcome of an F-subset check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FSubsetReport {
    pub holds: bool,
    /// The setwise stabilizer of the set.
    pub stabilizer: Vec<Element>,
    /// An element moving the set onto a proper overlap with itself.
    pub overlapping_element: Option<Element>,
}

/// Checks that `set` is an F-subset: its setwise stabilizer lies in the
/// family and every other translate is disjoint from it.
pub fn is_f_subset<T: Ord + Clone>(
    group: &GroupModel,
    family: &SubgroupFamily,
    set: &BTreeSet<T>,
    act: impl Fn(Element, &T) -> T,
) -> FSubsetReport {
    let mut stabilizer = Vec::new();
    let mut overlapping_element = None;
    for a in group.elements() {
        let image: BTreeSet<T> = set.iter().map(|x| act(a, x)).collect();
        if image == *set {
            stabilizer.push(a);
        } else if overlapping_element.is_none() && image.iter().any(|x| set.contains(x)) {
            overlapping_element = Some(a);
        }
    }
    let in_family = family.contains(group, &stabilizer.iter().copied().collect());
    FSubsetReport { holds: in_family && overlapping_element.is_none(), stabilizer, overlapping_element }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn dihedral6() -> (Graph, GroupModel) {
        let g = corpus::cycle(6);
        let grp = close_group(&g, &[corpus::rotation(6), corpus::reflection(6)], 100).unwrap();
        (g, grp)
    }

    #[test]
    fn cyclic_and_dihedral_orders() {
        let g = corpus::cycle(6);
        let c6 = close_group(&g, &[corpus::rotation(6)], 100).unwrap();
        assert_eq!(c6.order(), 6);
        let r3 = c6.find(&[3, 4, 5, 0, 1, 2]).unwrap();
        assert_eq!(c6.distance(0, r3), 3);
        let (_, d6) = dihedral6();
        assert_eq!(d6.order(), 12);
    }

    #[test]
    fn rejects_non_automorphism() {
        let g = corpus::path(3);
        let err = close_group(&g, &[vec![1, 0, 2]], 10).unwrap_err();
        assert!(err.to_string().contains("not an automorphism"));
        assert!(matches!(close_group(&g, &[vec![0, 0, 1]], 10), Err(Error::BadPermutation { .. })));
    }

    #[test]
    fn respects_cap() {
        let g = corpus::cycle(6);
        assert!(matches!(
            close_group(&g, &[corpus::rotation(6), corpus::reflection(6)], 8),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn orbits_and_stabilizers() {
        let g = corpus::cycle(6);
        let c6 = close_group(&g, &[corpus::rotation(6)], 100).unwrap();
        let verts: Vec<Vertex> = g.vertices().collect();
        assert_eq!(c6.orbits(&verts, |a, &v| c6.act(a, v)).len(), 1);
        let triv = GroupModel::trivial(5);
        assert_eq!(triv.orbits(&[0, 1, 2, 3, 4], |a, &v| triv.act(a, v)).len(), 5);
        let (g, d6) = dihedral6();
        let edges: Vec<Edge> = g.edges().collect();
        assert_eq!(d6.orbits(&edges, |a, &e| d6.act_edge(a, e)).len(), 1);
        assert_eq!(d6.vertex_stabilizer(0).len(), 2);
        assert_eq!(d6.pair_stabilizer(0, 3).len(), 2);
        assert_eq!(d6.unordered_pair_stabilizer(0, 3).len(), 4);
    }

    #[test]
    fn f_subsets() {
        let g = corpus::cycle(6);
        let c6 = close_group(&g, &[corpus::rotation(6)], 100).unwrap();
        let act = |a, &v: &Vertex| c6.act(a, v);
        let all: BTreeSet<Vertex> = g.vertices().collect();
        let r = is_f_subset(&c6, &SubgroupFamily::AllSubgroups, &all, act);
        assert!(r.holds && r.stabilizer.len() == 6);
        let single = BTreeSet::from([2]);
        assert!(is_f_subset(&c6, &SubgroupFamily::TrivialOnly, &single, act).holds);
        let evens = BTreeSet::from([0, 2, 4]);
        let r = is_f_subset(&c6, &SubgroupFamily::TrivialOnly, &evens, act);
        assert!(!r.holds);
        assert_eq!(r.stabilizer.len(), 3);
        let pair = BTreeSet::from([0, 1]);
        let r = is_f_subset(&c6, &SubgroupFamily::AllSubgroups, &pair, act);
        assert!(!r.holds && r.overlapping_element.is_some());
    }

    #[test]
    fn explicit_family_validation() {
        let (_, d6) = dihedral6();
        let trivial = BTreeSet::from([0]);
        assert!(SubgroupFamily::explicit(&d6, vec![trivial.clone()]).is_ok());
        let s0 = d6.vertex_stabilizer(0);
        assert!(SubgroupFamily::explicit(&d6, vec![trivial.clone(), s0.clone()]).is_err());
        let conj: Vec<_> = d6.elements().map(|a| d6.conjugate(a, &s0)).collect::<BTreeSet<_>>().into_iter().collect();
        let mut members = conj.clone();
        members.push(trivial);
        let fam = SubgroupFamily::explicit(&d6, members).unwrap();
        assert!(fam.contains(&d6, &s0));
        assert!(!fam.contains(&d6, &d6.elements().collect()));
    }

    #[test]
    fn lift_preserves_edges_of_subdivision() {
        let (g, d6) = dihedral6();
        let sub = Subdivision::new(&g);
        let lifted = d6.lift(&sub);
        for a in lifted.elements() {
            for e in sub.graph().edges() {
                assert!(sub.graph().has_edge(lifted.act(a, e.lo()), lifted.act(a, e.hi())));
            }
        }
    }
}
