//! Seeded pseudorandom instance generation for the verification sweeps.
//! Splitmix64 keeps the streams reproducible independent of any external
//! crate's generator evolution.

use decycle_core::Graph;

/// Splitmix64 stream.
#[derive(Clone, Debug)]
pub struct Prng(u64);

impl Prng {
    pub fn new(seed: u64) -> Prng {
        Prng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    /// Bernoulli with probability `num / den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }
}

/// Connected graph on `n` vertices: a uniform random labeled tree (random
/// Prüfer sequence) plus each remaining pair as a chord with probability
/// 3/10.
pub fn random_connected_graph(rng: &mut Prng, n: usize) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::new();
    if n == 2 {
        edges.push((0, 1));
    } else if n > 2 {
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.below(n)).collect();
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut ptr = 0;
        while degree[ptr] != 1 {
            ptr += 1;
        }
        let mut leaf = ptr;
        for &s in &seq {
            edges.push((leaf, s));
            degree[s] -= 1;
            if degree[s] == 1 && s < ptr {
                leaf = s;
            } else {
                ptr += 1;
                while degree[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        edges.push((leaf, n - 1));
    }
    let tree = Graph::from_edges(n, edges.iter().copied()).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.chance(3, 10) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Connected graph with order drawn from `lo..=hi`.
pub fn random_connected_in(rng: &mut Prng, lo: usize, hi: usize) -> Graph {
    let n = lo + rng.below(hi - lo + 1);
    random_connected_graph(rng, n)
}
