use serde::{Deserialize, Serialize};

use super::{Graph, PlanarError};
use crate::Epsilon;

/// Multiplier in the component cap c′(ε′) = ⌈C_IMPL / ε′²⌉.
pub const C_IMPL: u64 = 16;

/// Separator size constant β in |S| ≤ β·√n.
pub const SEPARATOR_BETA: u64 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorConfig {
    pub c_impl: Option<u64>,
    /// Replaces c′ entirely when set.
    pub cap_override: Option<usize>,
}

impl SeparatorConfig {
    pub fn with_cap(cap: usize) -> Self {
        SeparatorConfig { c_impl: None, cap_override: Some(cap) }
    }

    pub fn cap(&self, eps_prime: Epsilon) -> usize {
        self.cap_override.unwrap_or_else(|| component_cap(eps_prime, self.c_impl.unwrap_or(C_IMPL)))
    }
}

/// c′(ε′) = ⌈c_impl / ε′²⌉, saturating.
pub fn component_cap(eps_prime: Epsilon, c_impl: u64) -> usize {
    let p = eps_prime.numer() as u128;
    let q = eps_prime.denom() as u128;
    let num = (c_impl as u128).saturating_mul(q * q);
    usize::try_from(num.div_ceil(p * p)).unwrap_or(usize::MAX)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separator {
    pub vertices: Vec<usize>,
    /// Number of vertices of the separated graph.
    pub n: usize,
}

impl Separator {
    /// |S| ≤ β·√n, checked as |S|² ≤ β²·n.
    pub fn within_beta(&self, beta: u64) -> bool {
        let s = self.vertices.len() as u128;
        s * s <= (beta as u128) * (beta as u128) * self.n as u128
    }
}

fn ceil_two_thirds(n: usize) -> usize {
    (2 * n).div_ceil(3)
}

fn check_edge_bound(g: &Graph) -> Result<(), PlanarError> {
    let (n, m) = (g.len(), g.edge_count());
    if n >= 3 && m > 3 * n - 6 {
        return Err(PlanarError::NonPlanar { vertices: n, edges: m });
    }
    Ok(())
}

/// A vertex set whose removal leaves components of at most ⌈2n/3⌉ vertices.
pub fn balanced_separator(g: &Graph) -> Result<Separator, PlanarError> {
    check_edge_bound(g)?;
    let all: Vec<usize> = (0..g.len()).collect();
    let mut vertices = separator_within(g, &all);
    vertices.sort_unstable();
    Ok(Separator { vertices, n: g.len() })
}

/// BFS levels of the component containing `root`, restricted to `inside`.
fn bfs_levels(g: &Graph, root: usize, inside: &[bool]) -> Vec<Vec<usize>> {
    let mut dist = std::collections::HashMap::new();
    dist.insert(root, 0usize);
    let mut levels = vec![vec![root]];
    loop {
        let mut next = Vec::new();
        let d = levels.len();
        for &u in levels.last().unwrap() {
            for &v in g.neighbors(u) {
                if inside[v] && !dist.contains_key(&v) {
                    dist.insert(v, d);
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        levels.push(next);
    }
    levels
}

/// BFS tree of the component of `root` inside `inside`: visit order,
/// parents (`usize::MAX` for the root) and depths.
fn bfs_tree(g: &Graph, root: usize, inside: &[bool]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut parent = vec![usize::MAX; g.len()];
    let mut depth = vec![usize::MAX; g.len()];
    depth[root] = 0;
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in g.neighbors(u) {
            if inside[v] && depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                parent[v] = u;
                order.push(v);
            }
        }
    }
    (order, parent, depth)
}

/// Size of the largest component of `big` minus the `removed` vertices.
fn largest_after(g: &Graph, big: &[usize], inside: &[bool], removed: &[bool]) -> usize {
    let mut seen = vec![false; g.len()];
    let mut best = 0;
    let mut stack = Vec::new();
    for &s in big {
        if removed[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &v in g.neighbors(u) {
                if inside[v] && !removed[v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        best = best.max(size);
    }
    best
}

/// The vertex whose removal leaves the smallest largest component, with
/// that size, from one DFS with low-links.
fn best_cut_vertex(g: &Graph, big: &[usize], inside: &[bool]) -> Option<(usize, usize)> {
    let m = big.len();
    let root = *big.first()?;
    let mut disc = vec![usize::MAX; g.len()];
    let mut low = vec![0; g.len()];
    let mut sub = vec![1usize; g.len()];
    // Largest separated child subtree and total size of separated subtrees.
    let mut sep_max = vec![0usize; g.len()];
    let mut sep_sum = vec![0usize; g.len()];
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    disc[root] = 0;
    low[root] = 0;
    let mut time = 1;
    while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
        let nb = g.neighbors(u);
        if *next < nb.len() {
            let v = nb[*next];
            *next += 1;
            if !inside[v] || v == parent {
                continue;
            }
            if disc[v] == usize::MAX {
                disc[v] = time;
                low[v] = time;
                time += 1;
                stack.push((v, u, 0));
            } else {
                low[u] = low[u].min(disc[v]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[u]);
                sub[parent] += sub[u];
                if low[u] >= disc[parent] {
                    sep_max[parent] = sep_max[parent].max(sub[u]);
                    sep_sum[parent] += sub[u];
                }
            }
        }
    }
    big.iter()
        .map(|&v| {
            let rest = m - 1 - sep_sum[v];
            (sep_max[v].max(rest), v)
        })
        .min()
        .map(|(size, v)| (v, size))
}

/// Shortest fundamental cycle of a BFS tree rooted near the centre of `big`
/// that balances it, among cycles shorter than `shorter_than`.
fn cycle_separator(g: &Graph, big: &[usize], inside: &[bool], limit: usize, shorter_than: usize) -> Option<Vec<usize>> {
    let (order, _, _) = bfs_tree(g, big[0], inside);
    let far = *order.last()?;
    let (order, parent_far, depth_far) = bfs_tree(g, far, inside);
    let mut centre = *order.last()?;
    for _ in 0..depth_far[centre] / 2 {
        centre = parent_far[centre];
    }
    let (_, parent, depth) = bfs_tree(g, centre, inside);
    let cycle = |mut u: usize, mut v: usize| {
        let mut out = vec![u, v];
        while u != v {
            if depth[u] >= depth[v] {
                u = parent[u];
                out.push(u);
            } else {
                v = parent[v];
                out.push(v);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    };
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for &u in big {
        for &v in g.neighbors(u) {
            if u < v && inside[v] && parent[u] != v && parent[v] != u {
                edges.push((depth[u] + depth[v], u, v));
            }
        }
    }
    edges.sort_unstable();
    let mut removed = vec![false; g.len()];
    for &(_, u, v) in edges.iter().take(MAX_CYCLE_PROBES) {
        let c = cycle(u, v);
        if c.len() >= shorter_than {
            break;
        }
        c.iter().for_each(|&w| removed[w] = true);
        let ok = largest_after(g, big, inside, &removed) <= limit;
        c.iter().for_each(|&w| removed[w] = false);
        if ok {
            return Some(c);
        }
    }
    None
}

/// Fundamental cycles tried per separator call.
const MAX_CYCLE_PROBES: usize = 256;

/// Best balanced pair of BFS levels around the median, recursing into the
/// part between them when it is still too large.
fn level_separator(g: &Graph, big: &[usize], inside: &[bool], limit: usize) -> Vec<usize> {
    // Root at a vertex far from the smallest one.
    let probe = bfs_levels(g, big[0], inside);
    let root = *probe.last().unwrap().iter().min().unwrap();
    let levels = bfs_levels(g, root, inside);
    let m = big.len();
    let sizes: Vec<usize> = levels.iter().map(Vec::len).chain(std::iter::once(0)).collect();
    let mut cum = 0;
    let mut median = 0;
    for (l, s) in sizes.iter().enumerate() {
        cum += s;
        if 2 * cum >= m {
            median = l;
            break;
        }
    }
    let r = levels.len();
    let isqrt = |x: usize| {
        let q = num_integer::Roots::sqrt(&x);
        if q * q < x {
            q + 1
        } else {
            q
        }
    };
    let mut best: Option<(usize, usize, usize, usize)> = None;
    for lo in 0..=median {
        let mut middle: usize = sizes[(lo + 1).min(median)..median].iter().sum();
        for hi in median..=r {
            if hi > median && hi > lo + 1 {
                middle += sizes[hi - 1];
            }
            let sep = sizes[lo] + if hi != lo { sizes[hi] } else { 0 };
            let cost = if middle > limit { sep + 2 * isqrt(middle) } else { sep };
            let key = (cost, hi - lo, lo, hi);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    let (_, _, lo, hi) = best.unwrap();
    let mut sep: Vec<usize> = levels[lo].clone();
    if hi != lo && hi < r {
        sep.extend_from_slice(&levels[hi]);
    }
    let middle: Vec<usize> = levels[(lo + 1).min(hi.min(r))..hi.min(r)].iter().flatten().copied().collect();
    if middle.len() > limit {
        sep.extend(separator_within(g, &middle));
    }
    sep.sort_unstable();
    sep
}

/// Smallest of three balanced candidates: a single cut vertex, a short
/// fundamental cycle, and a BFS level separator.
pub(crate) fn separator_within(g: &Graph, members: &[usize]) -> Vec<usize> {
    let n = members.len();
    if n <= 2 {
        return Vec::new();
    }
    let limit = ceil_two_thirds(n);
    let comps = g.components_within(members);
    let Some(big) = comps.iter().find(|c| c.len() > limit) else {
        return Vec::new();
    };
    let mut inside = vec![false; g.len()];
    for &v in big {
        inside[v] = true;
    }
    if let Some((v, size)) = best_cut_vertex(g, big, &inside) {
        if size <= limit {
            return vec![v];
        }
    }
    let mut best = level_separator(g, big, &inside, limit);
    if let Some(c) = cycle_separator(g, big, &inside, limit, best.len()) {
        best = c;
    }
    best
}

/// Removed vertices plus the components left after removing them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Division {
    pub removed: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    /// The component cap c′ the division was built for.
    pub cap: usize,
}

impl Division {
    /// (removed, total) vertex counts.
    pub fn removed_fraction(&self) -> (usize, usize) {
        let total = self.removed.len() + self.components.iter().map(Vec::len).sum::<usize>();
        (self.removed.len(), total)
    }

    pub fn largest_component(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Component index per vertex, `None` for removed vertices.
    pub fn component_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (c, comp) in self.components.iter().enumerate() {
            for &v in comp {
                out[v] = Some(c);
            }
        }
        out
    }

    /// Checks the partition and the absence of cross-component edges.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut owner = vec![usize::MAX; g.len()];
        let mark = |owner: &mut Vec<usize>, v: usize, tag: usize| -> Result<(), String> {
            if v >= owner.len() {
                return Err(format!("vertex {v} out of range"));
            }
            if owner[v] != usize::MAX {
                return Err(format!("vertex {v} assigned twice"));
            }
            owner[v] = tag;
            Ok(())
        };
        for &v in &self.removed {
            mark(&mut owner, v, usize::MAX - 1)?;
        }
        for (c, comp) in self.components.iter().enumerate() {
            for &v in comp {
                mark(&mut owner, v, c)?;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(format!("vertex {v} unassigned"));
        }
        for (u, v) in g.edges() {
            let (a, b) = (owner[u], owner[v]);
            if a != b && a < usize::MAX - 1 && b < usize::MAX - 1 {
                return Err(format!("edge ({u}, {v}) joins components {a} and {b}"));
            }
        }
        Ok(())
    }
}

/// Repeatedly separates components larger than c′(ε′) and collects the
/// separators as removed vertices.
pub fn apply_separator(g: &Graph, eps_prime: Epsilon, cfg: &SeparatorConfig) -> Division {
    let cap = cfg.cap(eps_prime).max(1);
    let mut removed = Vec::new();
    let mut done = Vec::new();
    let mut queue = g.components();
    while let Some(comp) = queue.pop() {
        if comp.len() <= cap {
            done.push(comp);
            continue;
        }
        let mut sep = separator_within(g, &comp);
        if sep.is_empty() {
            sep.push(comp[0]);
        }
        let rest: Vec<usize> = comp.iter().copied().filter(|v| sep.binary_search(v).is_err()).collect();
        removed.extend_from_slice(&sep);
        queue.extend(g.components_within(&rest));
    }
    removed.sort_unstable();
    done.sort();
    Division { removed, components: done, cap }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn grid(w: usize, h: usize) -> Graph {
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
        Graph::from_edges(w * h, &edges).unwrap()
    }

    fn sides_after(g: &Graph, sep: &[usize]) -> Vec<usize> {
        let rest: Vec<usize> = (0..g.len()).filter(|v| !sep.contains(v)).collect();
        g.components_within(&rest).iter().map(Vec::len).collect()
    }

    #[test]
    fn path_of_nine_splits_in_the_middle() {
        let g = path(9);
        let s = balanced_separator(&g).unwrap();
        assert_eq!(s.vertices, vec![4]);
        assert_eq!(sides_after(&g, &s.vertices), vec![4, 4]);
    }

    #[test]
    fn tiny_graphs_need_no_separator() {
        assert!(balanced_separator(&path(2)).unwrap().vertices.is_empty());
        assert!(balanced_separator(&Graph::new(1)).unwrap().vertices.is_empty());
        assert!(balanced_separator(&Graph::new(0)).unwrap().vertices.is_empty());
    }

    #[test]
    fn three_by_three_grid() {
        let g = grid(3, 3);
        let s = balanced_separator(&g).unwrap();
        assert!(s.vertices.len() <= 3);
        assert!(sides_after(&g, &s.vertices).iter().all(|&c| c <= 6));
    }

    #[test]
    fn dense_graph_rejected() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(6, &edges).unwrap();
        assert!(matches!(balanced_separator(&g), Err(PlanarError::NonPlanar { .. })));
    }

    #[test]
    fn division_of_long_path() {
        let g = path(100);
        let eps = Epsilon::half();
        let d = apply_separator(&g, eps, &SeparatorConfig::default());
        d.validate(&g).unwrap();
        assert!(d.largest_component() <= component_cap(eps, C_IMPL));
        assert!(d.removed.len() <= 50);
    }

    #[test]
    fn small_graph_untouched() {
        let g = path(10);
        let d = apply_separator(&g, Epsilon::half(), &SeparatorConfig::default());
        assert!(d.removed.is_empty());
        assert_eq!(d.components, vec![(0..10).collect::<Vec<_>>()]);
        let empty = apply_separator(&Graph::new(0), Epsilon::half(), &SeparatorConfig::default());
        assert!(empty.removed.is_empty() && empty.components.is_empty());
    }

    #[test]
    fn cap_override_is_respected() {
        let g = grid(6, 6);
        let d = apply_separator(&g, Epsilon::half(), &SeparatorConfig::with_cap(4));
        d.validate(&g).unwrap();
        assert!(d.largest_component() <= 4);
    }

    #[test]
    fn cap_formula() {
        assert_eq!(component_cap(Epsilon::half(), 16), 64);
        assert_eq!(component_cap(Epsilon::new(1, 3).unwrap(), 2), 18);
    }
}
