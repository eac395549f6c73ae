//! Seeded graph generators for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// G(n, p) with a fixed generator; identical seeds give identical graphs.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "edge probability {p} out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges.as_slice())
}

/// Number of periphery nodes [`core_periphery`] attaches to its clique.
pub const PERIPHERY_NODES: usize = 305;
/// Clique size of [`core_periphery`]; the graph's maximum core value is one
/// less, since no periphery node has the degree to deepen it.
pub const CLIQUE_NODES: usize = 27;

/// Fragile clusters embedded in the periphery: a path of `path_len` nodes
/// pinned at core value `level`, each corona there, plus one resident
/// adjacent to the whole path. Repeated `count` times.
const CLUSTERS: [(usize, u32, usize); 10] = [
    (3, 3, 6),
    (3, 4, 5),
    (3, 5, 4),
    (3, 6, 3),
    (3, 7, 2),
    (4, 3, 5),
    (4, 4, 4),
    (4, 5, 3),
    (4, 6, 2),
    (4, 7, 1),
];

/// Hub-and-spoke benchmark graph: a 27-clique of hubs plus 305 periphery
/// nodes, 2126 edges, maximum core value 26, deterministic per seed.
///
/// The periphery mixes two textures. Fragile clusters are paths of
/// same-core corona nodes with one extra resident adjacent to the whole
/// path: every cluster member leans on exactly its core-value's worth of
/// supporters, so one removal anywhere inside cascades the path and drops
/// the resident with it — the resident's conservative budget (the path
/// length) overstates its true cost (one edge). The rest of the periphery
/// is preferential-attachment filler over the hubs and earlier filler with
/// a fixed degree pattern, giving the shells heterogeneous non-fragile
/// mass. Periphery degrees stay far below 26, so the deep core is exactly
/// the clique.
pub fn core_periphery(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = CLIQUE_NODES + PERIPHERY_NODES;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(2126);
    let mut deg = vec![0usize; n];

    fn link(edges: &mut Vec<(usize, usize)>, deg: &mut [usize], a: usize, b: usize) {
        edges.push((a, b));
        deg[a] += 1;
        deg[b] += 1;
    }

    for a in 0..CLIQUE_NODES {
        for b in (a + 1)..CLIQUE_NODES {
            link(&mut edges, &mut deg, a, b);
        }
    }

    let hubs = |rng: &mut ChaCha8Rng, want: usize| -> Vec<usize> {
        rand::seq::index::sample(rng, CLIQUE_NODES, want).into_vec()
    };

    let mut next = CLIQUE_NODES;
    for (path_len, level, count) in CLUSTERS {
        let k = level as usize;
        for _ in 0..count {
            let xs: Vec<usize> = (next..next + path_len).collect();
            let resident = next + path_len;
            next = resident + 1;
            for w in xs.windows(2) {
                link(&mut edges, &mut deg, w[0], w[1]);
            }
            for &x in &xs {
                link(&mut edges, &mut deg, x, resident);
            }
            // Top every member up to degree == level: path ends carry one
            // hub edge more than interior nodes, the resident one less
            // than its target supporter count.
            for (j, &x) in xs.iter().enumerate() {
                let want = if j == 0 || j == path_len - 1 { k - 2 } else { k - 3 };
                for h in hubs(&mut rng, want) {
                    link(&mut edges, &mut deg, x, h);
                }
            }
            for h in hubs(&mut rng, k - 1) {
                link(&mut edges, &mut deg, resident, h);
            }
        }
    }

    // Filler degrees: a fixed low-to-mid pattern, then round-robin +1 until
    // the total edge budget is met exactly.
    let filler = n - next;
    let mut want: Vec<usize> = (0..filler).map(|i| [2, 3, 4, 6, 8, 10, 12][i % 7]).collect();
    let mut deficit = 2126 - edges.len() - want.iter().sum::<usize>();
    while deficit > 0 {
        for w in want.iter_mut() {
            if deficit == 0 {
                break;
            }
            if *w < 25 {
                *w += 1;
                deficit -= 1;
            }
        }
    }
    want.shuffle(&mut rng);

    // Attach filler to the hubs and earlier filler only (never to cluster
    // nodes, whose degrees pin their core values), weighting by degree + 1.
    let mut pool: Vec<usize> = (0..CLIQUE_NODES).collect();
    for (i, &w) in want.iter().enumerate() {
        let j = next + i;
        let mut chosen = vec![false; pool.len()];
        for _ in 0..w {
            let total: usize = pool
                .iter()
                .enumerate()
                .filter(|&(c, _)| !chosen[c])
                .map(|(_, &p)| deg[p] + 1)
                .sum();
            let mut r = rng.gen_range(0..total);
            let pick = pool
                .iter()
                .enumerate()
                .filter(|&(c, _)| !chosen[c])
                .find(|&(_, &p)| {
                    let weight = deg[p] + 1;
                    if r < weight {
                        true
                    } else {
                        r -= weight;
                        false
                    }
                })
                .map(|(c, &p)| (c, p))
                .expect("weights cover the draw");
            chosen[pick.0] = true;
            link(&mut edges, &mut deg, pick.1, j);
        }
        pool.push(j);
    }

    debug_assert_eq!(edges.len(), 2126);
    Graph::from_edges(n, &edges)
}
