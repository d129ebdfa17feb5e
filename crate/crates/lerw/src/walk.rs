//! Simple random walk paths on `Z^d`.

use rand::Rng;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A point of the integer lattice `Z^d`. Coordinates are stored inline for
/// `d <= 4`, which covers every experiment in this crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(SmallVec<[i64; 4]>);

impl LatticePoint {
    pub fn origin(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        LatticePoint(smallvec![0; dim])
    }

    pub fn from_coords(coords: &[i64]) -> Self {
        assert!(!coords.is_empty(), "dimension must be >= 1");
        LatticePoint(SmallVec::from_slice(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|&c| c.unsigned_abs()).sum()
    }

    pub fn l1_distance(&self, other: &LatticePoint) -> u64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| a.abs_diff(b))
            .sum()
    }

    fn translated(&self, step: &LatticePoint) -> LatticePoint {
        let mut coords = self.0.clone();
        for (c, s) in coords.iter_mut().zip(step.0.iter()) {
            *c += s;
        }
        LatticePoint(coords)
    }
}

impl std::fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite simple-random-walk trajectory started at the origin.
///
/// A path of `n` steps holds `n + 1` points; consecutive points are lattice
/// nearest neighbors (L1 distance exactly 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WalkPath {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl WalkPath {
    /// Wrap an explicit point sequence, checking the path invariants.
    pub fn from_points(points: Vec<LatticePoint>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::invalid("points", "path must contain at least one point"))?;
        if !first.is_origin() {
            return Err(Error::invalid("points", "path must start at the origin"));
        }
        let dim = first.dim();
        for (i, pair) in points.windows(2).enumerate() {
            if pair[1].dim() != dim {
                return Err(Error::invalid(
                    "points",
                    format!("point {} has dimension {} != {dim}", i + 1, pair[1].dim()),
                ));
            }
            if pair[0].l1_distance(&pair[1]) != 1 {
                return Err(Error::invalid(
                    "points",
                    format!("points {i} and {} are not nearest neighbors", i + 1),
                ));
            }
        }
        Ok(WalkPath { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points (steps + 1).
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &LatticePoint {
        &self.points[i]
    }
}

/// Draw one unit step: exactly one coordinate is `+-1`, each of the `2 * dim`
/// directions with probability `1 / (2 * dim)`.
pub fn sample_step(rng: &mut RngStream, dim: usize) -> LatticePoint {
    assert!(dim >= 1, "dimension must be >= 1");
    let r = rng.gen_range(0..2 * dim);
    let mut coords: SmallVec<[i64; 4]> = smallvec![0; dim];
    coords[r >> 1] = if r & 1 == 0 { 1 } else { -1 };
    LatticePoint(coords)
}

/// Generate an `n_steps`-step walk started at the origin, consuming exactly
/// one direction draw per step.
pub fn generate_walk(rng: &mut RngStream, n_steps: usize, dim: usize) -> WalkPath {
    assert!(dim >= 1, "dimension must be >= 1");
    let mut points = Vec::with_capacity(n_steps + 1);
    points.push(LatticePoint::origin(dim));
    for _ in 0..n_steps {
        let step = sample_step(rng, dim);
        let next = points.last().unwrap().translated(&step);
        points.push(next);
    }
    WalkPath { dim, points }
}

/// Endpoint of an `n_steps`-step walk without materializing the path.
///
/// Consumes the same draws as [`generate_walk`], so on an equal stream it
/// lands on the same point.
pub fn walk_endpoint(rng: &mut RngStream, n_steps: usize, dim: usize) -> LatticePoint {
    assert!(dim >= 1, "dimension must be >= 1");
    let mut pos = LatticePoint::origin(dim);
    for _ in 0..n_steps {
        let r = rng.gen_range(0..2 * dim);
        pos.0[r >> 1] += if r & 1 == 0 { 1 } else { -1 };
    }
    pos
}
