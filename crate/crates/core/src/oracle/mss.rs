/// k values from `xs` (repetition allowed) summing to `t`, via a reachability
/// table over (picks, sum) with parent pointers. Returned in ascending order.
pub fn mss_exact(xs: &[u64], t: u64, k: usize) -> Option<Vec<u64>> {
    let t = usize::try_from(t).ok()?;
    let width = t + 1;
    // parent[j][s] = index into xs of the last pick reaching sum s with j picks.
    let mut parent = vec![u32::MAX; (k + 1) * width];
    let mut reach = vec![false; (k + 1) * width];
    reach[0] = true;
    for j in 1..=k {
        for s in 0..=t {
            for (xi, &x) in xs.iter().enumerate() {
                let x = x as usize;
                if x <= s && reach[(j - 1) * width + s - x] {
                    reach[j * width + s] = true;
                    parent[j * width + s] = xi as u32;
                    break;
                }
            }
        }
    }
    if !reach[k * width + t] {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    let mut s = t;
    for j in (1..=k).rev() {
        let x = xs[parent[j * width + s] as usize];
        out.push(x);
        s -= x as usize;
    }
    out.sort_unstable();
    Some(out)
}

/// Brute force over all multisets of size k; true iff one sums to t.
pub fn mss_enumerate(xs: &[u64], t: u64, k: usize) -> bool {
    fn go(xs: &[u64], start: usize, left: usize, rem: u64) -> bool {
        if left == 0 {
            return rem == 0;
        }
        (start..xs.len()).any(|i| xs[i] <= rem && go(xs, i, left - 1, rem - xs[i]))
    }
    go(xs, 0, k, t)
}
