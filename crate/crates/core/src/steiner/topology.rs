//! Steiner topologies: trees over terminal slots plus Steiner slots of
//! degree at least three. Full topologies (every Steiner slot of degree
//! exactly three, m = n - 2) are enumerated by repeated edge splitting,
//! which produces each terminal-labeled topology exactly once, giving
//! (2n-5)!! of them.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A tree on `terminal_count + steiner_count` slots. Slots below
/// `terminal_count` are terminals; the rest are Steiner slots, each of
/// degree at least three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTopology {
    terminal_count: usize,
    steiner_count: usize,
    edges: Vec<(usize, usize)>,
}

impl SteinerTopology {
    pub fn new(
        terminal_count: usize,
        steiner_count: usize,
        mut edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let slots = terminal_count + steiner_count;
        if terminal_count == 0 {
            return Err(Error::InvalidInput("no terminal slots".into()));
        }
        if steiner_count > terminal_count.saturating_sub(2) {
            return Err(Error::InvalidInput(format!(
                "{steiner_count} Steiner slots exceed the bound n-2 = {}",
                terminal_count.saturating_sub(2)
            )));
        }
        if edges.len() + 1 != slots && !(slots == 1 && edges.is_empty()) {
            return Err(Error::InvalidInput("edge count does not form a tree".into()));
        }
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.0 == e.1 || e.1 >= slots {
                return Err(Error::InvalidInput("bad edge endpoints".into()));
            }
        }
        edges.sort_unstable();
        // connectivity via union-find; acyclicity follows from the edge count
        let mut parent: Vec<usize> = (0..slots).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::InvalidInput("edges contain a cycle".into()));
            }
            parent[ra] = rb;
        }
        let mut degree = vec![0usize; slots];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        for s in terminal_count..slots {
            if degree[s] < 3 {
                return Err(Error::InvalidInput(format!(
                    "Steiner slot {s} has degree {} < 3",
                    degree[s]
                )));
            }
        }
        Ok(SteinerTopology {
            terminal_count,
            steiner_count,
            edges,
        })
    }

    pub fn terminal_count(&self) -> usize {
        self.terminal_count
    }

    pub fn steiner_count(&self) -> usize {
        self.steiner_count
    }

    pub fn slots(&self) -> usize {
        self.terminal_count + self.steiner_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The trivial topology on one terminal (no edges).
    pub fn single_terminal() -> Self {
        SteinerTopology {
            terminal_count: 1,
            steiner_count: 0,
            edges: Vec::new(),
        }
    }

    /// Star: one Steiner hub (slot n) joined to every terminal. `n >= 3`.
    pub fn star(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput("star needs at least 3 terminals".into()));
        }
        Self::new(n, 1, (0..n).map(|i| (i, n)).collect())
    }

    /// Canonical form under permutations of the Steiner slots: the
    /// lexicographically smallest sorted edge list. Brute force over
    /// Steiner permutations; for test-scale m only.
    pub fn canonical_key(&self) -> Vec<(usize, usize)> {
        let n = self.terminal_count;
        let m = self.steiner_count;
        let mut perm: Vec<usize> = (0..m).collect();
        let mut best: Option<Vec<(usize, usize)>> = None;
        permute(&mut perm, 0, &mut |p| {
            let mut edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .map(|&(a, b)| {
                    let ra = if a >= n { n + p[a - n] } else { a };
                    let rb = if b >= n { n + p[b - n] } else { b };
                    (ra.min(rb), ra.max(rb))
                })
                .collect();
            edges.sort_unstable();
            if best.as_ref().is_none_or(|b| edges < *b) {
                best = Some(edges);
            }
        });
        best.expect("at least the identity permutation")
    }
}

fn permute<F: FnMut(&[usize])>(perm: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// All full topologies on `n` terminals (each Steiner slot of degree exactly
/// three, `m = n - 2`), in a fixed deterministic order. For `n = 2` this is
/// the bare edge. Supports `2 <= n <= 7`.
pub fn enumerate_topologies(n: usize) -> Result<Vec<SteinerTopology>> {
    if !(2..=7).contains(&n) {
        return Err(Error::SizeLimit { got: n, limit: 7 });
    }
    // Grow by inserting terminal k on every edge of every partial topology;
    // the new Steiner slot for insertion step k is n + (k - 2).
    let mut current: Vec<Vec<(usize, usize)>> = vec![vec![(0, 1)]];
    for k in 2..n {
        let steiner = n + (k - 2);
        let mut next = Vec::with_capacity(current.len() * (2 * k - 3));
        for edges in &current {
            for (i, &(a, b)) in edges.iter().enumerate() {
                let mut e = Vec::with_capacity(edges.len() + 2);
                e.extend(edges.iter().take(i).copied());
                e.extend(edges.iter().skip(i + 1).copied());
                e.push((a, steiner));
                e.push((b, steiner));
                e.push((k, steiner));
                next.push(e);
            }
        }
        current = next;
    }
    current
        .into_iter()
        .map(|edges| SteinerTopology::new(n, n - 2, edges))
        .collect()
}

/// Independent generator for tests: all labeled trees on `n + m` nodes via
/// Prüfer sequences, filtered to full topologies and deduplicated under
/// Steiner relabeling. Exponential; only sensible for `n <= 5`.
pub fn brute_force_full_topologies(n: usize) -> Vec<SteinerTopology> {
    let m = n - 2;
    let slots = n + m;
    if n == 2 {
        return vec![SteinerTopology::new(2, 0, vec![(0, 1)]).unwrap()];
    }
    let mut seen: HashMap<Vec<(usize, usize)>, SteinerTopology> = HashMap::new();
    let seq_len = slots - 2;
    let total = (slots as u64).pow(seq_len as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(seq_len);
        let mut c = code;
        for _ in 0..seq_len {
            seq.push((c % slots as u64) as usize);
            c /= slots as u64;
        }
        let edges = pruefer_to_tree(&seq, slots);
        let mut degree = vec![0usize; slots];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        if (0..n).all(|t| degree[t] == 1) && (n..slots).all(|s| degree[s] == 3) {
            if let Ok(topo) = SteinerTopology::new(n, m, edges) {
                seen.entry(topo.canonical_key()).or_insert(topo);
            }
        }
    }
    let mut out: Vec<SteinerTopology> = seen.into_values().collect();
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    out
}

fn pruefer_to_tree(seq: &[usize], slots: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; slots];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(slots - 1);
    let mut used = vec![false; slots];
    for &s in seq {
        let leaf = (0..slots).find(|&i| degree[i] == 1 && !used[i]).unwrap();
        edges.push((leaf.min(s), leaf.max(s)));
        used[leaf] = true;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..slots).filter(|&i| !used[i] && degree[i] == 1).collect();
    edges.push((rest[0].min(rest[1]), rest[0].max(rest[1])));
    edges
}
