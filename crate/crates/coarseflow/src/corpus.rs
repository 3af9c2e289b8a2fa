//! Small graph families and symmetry generators used by tests, examples and
//! the shipped corpus.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, Vertex};

fn build(n: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
    Graph::new(n, edges).expect("generator produces a simple graph")
}

/// Path with `n` vertices `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// Cycle with `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// Star with center `0` and `k` leaves.
pub fn star(k: usize) -> Graph {
    build(k + 1, (1..=k).map(|i| (0, i)).collect())
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect())
}

/// Hypercube of dimension `d`; vertices are bit masks.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    build(n, (0..n).flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))).filter(|&(a, b)| a < b)).collect())
}

/// Grid graph with `w * h` vertices, vertex `(x, y)` numbered `y * w + x`.
pub fn grid(w: usize, h: usize) -> Graph {
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let v = y * w + x;
            if x + 1 < w {
                edges.push((v, v + 1));
            }
            if y + 1 < h {
                edges.push((v, v + w));
            }
        }
    }
    build(w * h, edges)
}

/// The Petersen graph.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, edges)
}

/// Cycle `C_n` with one chord from `0` to `k`.
pub fn cycle_with_chord(n: usize, k: usize) -> Graph {
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.push((0, k));
    build(n, edges)
}

/// `k` cycles of length `len` glued at the hub `0`, which is marked as a
/// cone vertex. Petal `p` uses vertices `1 + p*(len-1) .. 1 + (p+1)*(len-1)`.
pub fn bouquet(k: usize, len: usize) -> Graph {
    assert!(len >= 3);
    let per = len - 1;
    let mut edges = Vec::new();
    for p in 0..k {
        let first = 1 + p * per;
        edges.push((0, first));
        for i in 0..per - 1 {
            edges.push((first + i, first + i + 1));
        }
        edges.push((first + per - 1, 0));
    }
    build(1 + k * per, edges).with_cone_vertices([0]).unwrap()
}

/// Uniform random labelled tree on `n` vertices, built by attaching each
/// vertex to a random earlier one.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    build(n, (1..n).map(|i| (rng.gen_range(0..i), i)).collect())
}

/// Random connected graph: a random tree plus `extra` random chords.
pub fn random_connected<R: Rng + ?Sized>(n: usize, extra: usize, rng: &mut R) -> Graph {
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    let mut present: std::collections::BTreeSet<(Vertex, Vertex)> =
        edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut tries = 0;
    while present.len() < n - 1 + extra && tries < 50 * (extra + 1) {
        tries += 1;
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b && present.insert((a.min(b), a.max(b))) {
            edges.push((a, b));
        }
    }
    build(n, edges)
}

/// Random cactus: cycles of random lengths in `3..=max_len` hung off random
/// earlier vertices.
pub fn random_cactus<R: Rng + ?Sized>(blocks: usize, max_len: usize, rng: &mut R) -> Graph {
    let mut n = 1;
    let mut edges = Vec::new();
    for _ in 0..blocks {
        let at = rng.gen_range(0..n);
        let len = rng.gen_range(3..=max_len.max(3));
        let mut prev = at;
        for _ in 0..len - 1 {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, at));
    }
    build(n, edges)
}

/// Random relabelling of a graph.
pub fn shuffled<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Graph {
    let mut perm: Vec<Vertex> = g.vertices().collect();
    perm.shuffle(rng);
    build(g.vertex_count(), g.edges().map(|e| (perm[e.lo()], perm[e.hi()])).collect())
}

/// Rotation `i -> i + 1 (mod n)` of a cycle.
pub fn rotation(n: usize) -> Vec<Vertex> {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// Reflection `i -> -i (mod n)` of a cycle.
pub fn reflection(n: usize) -> Vec<Vertex> {
    (0..n).map(|i| (n - i) % n).collect()
}

/// Cyclic rotation of the petals of [`bouquet`].
pub fn petal_rotation(k: usize, len: usize) -> Vec<Vertex> {
    let per = len - 1;
    let mut perm = vec![0; 1 + k * per];
    for p in 0..k {
        for i in 0..per {
            perm[1 + p * per + i] = 1 + ((p + 1) % k) * per + i;
        }
    }
    perm
}

/// Reversal of every petal of [`bouquet`].
pub fn petal_flip(k: usize, len: usize) -> Vec<Vertex> {
    let per = len - 1;
    let mut perm = vec![0; 1 + k * per];
    for p in 0..k {
        for i in 0..per {
            perm[1 + p * per + i] = 1 + p * per + (per - 1 - i);
        }
    }
    perm
}

/// Transposition of two leaves of [`star`].
pub fn leaf_swap(k: usize, a: usize, b: usize) -> Vec<Vertex> {
    let mut perm: Vec<Vertex> = (0..=k).collect();
    perm.swap(a, b);
    perm
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn sizes() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(hypercube(3).edge_count(), 12);
        assert_eq!(grid(3, 2).edge_count(), 7);
        assert_eq!(petersen().edge_count(), 15);
        let b = bouquet(3, 4);
        assert_eq!((b.vertex_count(), b.edge_count(), b.degree(0)), (10, 12, 6));
        assert_eq!(b.cone_vertices(), vec![0]);
    }

    #[test]
    fn random_families_are_connected() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let t = random_tree(12, &mut rng);
            assert!(t.is_connected() && t.is_forest());
            assert!(random_connected(15, 6, &mut rng).is_connected());
            assert!(random_cactus(4, 6, &mut rng).is_connected());
        }
    }
}
