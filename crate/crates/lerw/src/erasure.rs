//! Finite-memory (windowed) loop erasure.
//!
//! A segment `[path[i], ..., path[j]]` with `path[i] = path[j]` and
//! `0 < j - i <= W` is a window loop. The windowed erasure removes exactly
//! these loops, chronologically, by the jump-time recursion
//!
//! ```text
//! sigma(0) = max { j <= W                 : path[j] = path[0] }
//! sigma(i) = max { j in [t, t + W]        : path[j] = path[t] },  t = sigma(i-1) + 1
//! ```
//!
//! on a finite path all windows are clamped at the last index and the
//! recursion stops once the pivot `t` passes the end. `W >=` path length
//! reduces to classical full loop erasure, whose output is self-avoiding;
//! `W = 1` erases nothing because consecutive lattice points always differ.
//!
//! [`erase_windowed`] resolves each `sup` by binary search in per-point
//! occurrence lists (`O(n log n)` total). [`erase_windowed_naive`] is the
//! independent brute-force oracle with the identical contract: it rescans the
//! whole window at every pivot, `O(n * W)`, and exists so the fast path can be
//! checked trace-for-trace against it.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::walk::LatticePoint;

/// The erasure window derived from the scaling parameter `N` and the memory
/// exponent `alpha`: `W = floor(N^alpha)`, clamped to `[1, path_len]`, with
/// `alpha = inf` meaning the whole path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowSpec {
    pub n_scale: u64,
    /// `f64::INFINITY` selects full erasure.
    pub alpha: f64,
    pub window: usize,
}

impl WindowSpec {
    pub fn resolve(n_scale: u64, alpha: f64, path_len: usize) -> Result<Self> {
        let window = window_length(n_scale, alpha, path_len)?;
        Ok(WindowSpec {
            n_scale,
            alpha,
            window,
        })
    }
}

/// `floor(N^alpha)` clamped to `[1, path_len]`; `alpha = inf` maps to
/// `path_len`.
///
/// The floor is guarded against `powf` rounding a few ulps below an exact
/// integer power (e.g. `1024^0.4 = 16`).
pub fn window_length(n_scale: u64, alpha: f64, path_len: usize) -> Result<usize> {
    if n_scale == 0 {
        return Err(Error::invalid("N", "scaling parameter must be >= 1"));
    }
    if path_len == 0 {
        return Err(Error::invalid("path_len", "path length must be >= 1"));
    }
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::invalid(
            "alpha",
            format!("must be a non-negative real or infinity, got {alpha}"),
        ));
    }
    if alpha.is_infinite() {
        return Ok(path_len);
    }
    let raw = (n_scale as f64).powf(alpha);
    let floored = (raw * (1.0 + 4.0 * f64::EPSILON)).floor();
    let w = if floored >= path_len as f64 {
        path_len
    } else {
        floored as usize
    };
    Ok(w.max(1))
}

/// The complete result of one loop-erasing pass over a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasureTrace {
    /// Jump times `sigma(0) < sigma(1) < ...`; on a finite path the last
    /// entry is always the final index.
    pub sigma: Vec<usize>,
    /// `y_flags[n]` is true iff `n` is a jump time (index `n` survives).
    pub y_flags: Vec<bool>,
    /// `rho[n]` = number of surviving indices among `0..=n`.
    pub rho: Vec<usize>,
    /// `erased_path[i] = path[sigma(i)]`, the walk remaining after erasure.
    pub erased_path: Vec<LatticePoint>,
}

impl ErasureTrace {
    pub fn num_jumps(&self) -> usize {
        self.sigma.len()
    }

    /// Check every structural invariant of a trace against the path and
    /// window that produced it. Intended for tests and the acceptance suite;
    /// the nearest-neighbor check on the erased path assumes `path` is a
    /// unit-step walk.
    pub fn validate(&self, path: &[LatticePoint], window: usize) -> std::result::Result<(), String> {
        let last = path.len() - 1;
        if self.sigma.is_empty() {
            return Err("sigma is empty".into());
        }
        if self.sigma[0] > window.min(last) {
            return Err(format!("sigma[0] = {} exceeds window {window}", self.sigma[0]));
        }
        if path[self.sigma[0]] != path[0] {
            return Err("path[sigma[0]] differs from the starting point".into());
        }
        for i in 1..self.sigma.len() {
            let prev = self.sigma[i - 1];
            let cur = self.sigma[i];
            if cur < prev + 1 {
                return Err(format!("sigma not strictly increasing at {i}"));
            }
            if cur > prev + 1 + window {
                return Err(format!(
                    "sigma[{i}] = {cur} beyond window from pivot {}",
                    prev + 1
                ));
            }
            if path[cur] != path[prev + 1] {
                return Err(format!("pivot-value equality fails at jump {i}"));
            }
        }
        if *self.sigma.last().unwrap() != last {
            return Err("finite-path truncation: last jump must land on the last index".into());
        }
        if self.y_flags.len() != path.len() || self.rho.len() != path.len() {
            return Err("y_flags/rho length mismatch".into());
        }
        let mut in_sigma = vec![false; path.len()];
        for &s in &self.sigma {
            in_sigma[s] = true;
        }
        let mut count = 0usize;
        for n in 0..path.len() {
            if self.y_flags[n] != in_sigma[n] {
                return Err(format!("y_flags[{n}] inconsistent with sigma"));
            }
            count += usize::from(self.y_flags[n]);
            if self.rho[n] != count {
                return Err(format!("rho[{n}] = {} != running count {count}", self.rho[n]));
            }
        }
        if self.erased_path.len() != self.sigma.len() {
            return Err("erased_path length differs from sigma length".into());
        }
        for (i, &s) in self.sigma.iter().enumerate() {
            if self.erased_path[i] != path[s] {
                return Err(format!("erased_path[{i}] != path[sigma[{i}]]"));
            }
        }
        for (i, pair) in self.erased_path.windows(2).enumerate() {
            if pair[0].l1_distance(&pair[1]) != 1 {
                return Err(format!("erased points {i} and {} not nearest neighbors", i + 1));
            }
        }
        // Loop-free points always survive; the converse need not hold.
        let mask = loop_free_mask(path, window);
        for n in 0..path.len() {
            if mask[n] && !self.y_flags[n] {
                return Err(format!("loop-free index {n} was erased"));
            }
        }
        Ok(())
    }
}

fn build_trace(path: &[LatticePoint], sigma: Vec<usize>) -> ErasureTrace {
    let mut y_flags = vec![false; path.len()];
    for &s in &sigma {
        y_flags[s] = true;
    }
    let mut rho = Vec::with_capacity(path.len());
    let mut count = 0usize;
    for &y in &y_flags {
        count += usize::from(y);
        rho.push(count);
    }
    let erased_path = sigma.iter().map(|&s| path[s].clone()).collect();
    ErasureTrace {
        sigma,
        y_flags,
        rho,
        erased_path,
    }
}

/// Windowed loop erasure, next-occurrence fast path.
///
/// One reverse hashing pass links every index to the next revisit of its
/// point; each `sup` then walks that chain inside the window. Chains never
/// overlap across pivots, so the whole pass is `O(n)` beyond the hashing.
///
/// `path` must be nonempty and `window >= 1`. The first point of `path` plays
/// the role of the origin.
pub fn erase_windowed(path: &[LatticePoint], window: usize) -> ErasureTrace {
    assert!(!path.is_empty(), "path must be nonempty");
    assert!(window >= 1, "window must be >= 1");
    let n = path.len();
    let last = n - 1;

    const NONE: usize = usize::MAX;
    let mut next_occurrence = vec![NONE; n];
    let mut last_seen: FxHashMap<&LatticePoint, usize> =
        FxHashMap::with_capacity_and_hasher(n, Default::default());
    for (i, p) in path.iter().enumerate().rev() {
        if let Some(&j) = last_seen.get(p) {
            next_occurrence[i] = j;
        }
        last_seen.insert(p, i);
    }

    // last occurrence of path[from] within [from, hi]
    let chain_sup = |from: usize, hi: usize| -> usize {
        let mut s = from;
        while next_occurrence[s] <= hi {
            s = next_occurrence[s];
        }
        s
    };

    let mut sigma = Vec::with_capacity(n);
    let mut s = chain_sup(0, window.min(last));
    sigma.push(s);
    while s < last {
        let pivot = s + 1;
        let hi = pivot.saturating_add(window).min(last);
        s = chain_sup(pivot, hi);
        sigma.push(s);
    }
    build_trace(path, sigma)
}

/// Brute-force oracle for [`erase_windowed`]: identical contract, resolved by
/// a literal linear scan of the window at every pivot.
pub fn erase_windowed_naive(path: &[LatticePoint], window: usize) -> ErasureTrace {
    assert!(!path.is_empty(), "path must be nonempty");
    assert!(window >= 1, "window must be >= 1");
    let last = path.len() - 1;

    let scan_last_match = |target: &LatticePoint, lo: usize, hi: usize| -> usize {
        let mut found = lo;
        for j in lo..=hi {
            if &path[j] == target {
                found = j;
            }
        }
        found
    };

    let mut sigma = Vec::new();
    let mut s = scan_last_match(&path[0], 0, window.min(last));
    sigma.push(s);
    while s < last {
        let pivot = s + 1;
        let hi = pivot.saturating_add(window).min(last);
        s = scan_last_match(&path[pivot], pivot, hi);
        sigma.push(s);
    }
    build_trace(path, sigma)
}

/// Classical full loop erasure: the window covers the whole path, and the
/// resulting erased path is self-avoiding.
pub fn erase_full(path: &[LatticePoint]) -> ErasureTrace {
    erase_windowed(path, path.len())
}

/// `mask[n]` is true iff no pair `i < j` with `i <= n <= j`, `j - i <= window`
/// and `path[i] = path[j]` exists, i.e. index `n` lies in no window loop.
pub fn loop_free_mask(path: &[LatticePoint], window: usize) -> Vec<bool> {
    let n = path.len();
    let mut occurrences: FxHashMap<&LatticePoint, Vec<usize>> = FxHashMap::default();
    for (i, p) in path.iter().enumerate() {
        occurrences.entry(p).or_default().push(i);
    }
    // Cover each index contained in some loop. For every j it suffices to
    // take the earliest matching i within the window: intervals from later
    // matches are nested inside it.
    let mut delta = vec![0i32; n + 1];
    for (j, p) in path.iter().enumerate() {
        let list = &occurrences[p];
        let lo = j.saturating_sub(window);
        let pos = list.partition_point(|&x| x < lo);
        let i = list[pos];
        if i < j {
            delta[i] += 1;
            delta[j + 1] -= 1;
        }
    }
    let mut mask = Vec::with_capacity(n);
    let mut cover = 0i32;
    for d in delta.iter().take(n) {
        cover += d;
        mask.push(cover == 0);
    }
    mask
}

/// Indicator that `[j, k]` (inclusive) contains no loop-free point.
pub fn z_indicator(mask: &[bool], j: usize, k: usize) -> Result<bool> {
    if j > k || k >= mask.len() {
        return Err(Error::invalid(
            "range",
            format!("need 0 <= j <= k < {}, got j = {j}, k = {k}", mask.len()),
        ));
    }
    Ok(mask[j..=k].iter().all(|&free| !free))
}
