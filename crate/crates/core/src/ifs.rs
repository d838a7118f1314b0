//! Affine iterated function systems and the point clouds they generate.
//!
//! A system is a family of maps `psi_j(x) = c * (x + b_j)` sharing one
//! contraction ratio `c` in (0, 1). Iterating the family from the extreme
//! fixed points produces finite clouds `S_0, S_1, ...` that converge to the
//! attractor in Hausdorff distance at rate `c^n`, which is what makes the
//! empirical persistence pipeline quantitative.

use crate::error::{Error, Result};
use crate::num::{cast, Real};

/// Default ceiling on materialized cloud sizes. Iteration grows like
/// `N^n`, so runaway parameters hit this before exhausting memory.
pub const DEFAULT_POINT_CAP: usize = 2_000_000;

/// A finite set of points in `R^dim`, stored flat for locality.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud<T> {
    dim: usize,
    coords: Vec<T>,
}

impl<T: Real> PointCloud<T> {
    /// Build a cloud from per-point coordinate slices.
    pub fn new(dim: usize, points: &[Vec<T>]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite {
                    what: "point coordinate",
                });
            }
            coords.extend_from_slice(p);
        }
        Ok(Self { dim, coords })
    }

    /// Build a cloud from a flat coordinate buffer of length `dim * n`.
    pub fn from_flat(dim: usize, coords: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                what: "point coordinate",
            });
        }
        Ok(Self { dim, coords })
    }

    /// Convenience constructor for one-dimensional clouds.
    pub fn from_scalars(values: &[T]) -> Result<Self> {
        Self::from_flat(1, values.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter_points(&self) -> impl Iterator<Item = &[T]> {
        self.coords.chunks_exact(self.dim)
    }

    /// The flat coordinate buffer, `dim` entries per point.
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    fn push(&mut self, p: &[T]) {
        debug_assert_eq!(p.len(), self.dim);
        self.coords.extend_from_slice(p);
    }

    /// Largest pairwise distance; zero for a singleton.
    pub fn diameter(&self) -> Result<T> {
        if self.is_empty() {
            return Err(Error::EmptyCloud);
        }
        let mut best = T::zero();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let d = distance(self.point(i), self.point(j));
                if d > best {
                    best = d;
                }
            }
        }
        Ok(best)
    }

    /// Diagonal of the axis-aligned bounding box: a cheap upper-magnitude
    /// proxy for the diameter, used to scale merge tolerances.
    fn bounding_span(&self) -> T {
        if self.is_empty() {
            return T::zero();
        }
        let mut acc = T::zero();
        for a in 0..self.dim {
            let mut lo = self.coords[a];
            let mut hi = self.coords[a];
            for p in self.iter_points() {
                if p[a] < lo {
                    lo = p[a];
                }
                if p[a] > hi {
                    hi = p[a];
                }
            }
            acc = acc + (hi - lo) * (hi - lo);
        }
        acc.sqrt()
    }

    /// Sort points lexicographically and merge points that coincide up to
    /// `tol` in Euclidean distance. Genuine coordinates in the clouds this
    /// crate builds stay many orders of magnitude above the tolerance, so
    /// merging only collapses floating duplicates of the same point.
    fn dedup(mut self, tol: T) -> Self {
        let dim = self.dim;
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&i, &j| {
            let a = &self.coords[i * dim..(i + 1) * dim];
            let b = &self.coords[j * dim..(j + 1) * dim];
            a.partial_cmp(b)
                .expect("finite coordinates are totally ordered")
        });
        let mut kept: Vec<T> = Vec::with_capacity(self.coords.len());
        for &i in &order {
            let p = &self.coords[i * dim..(i + 1) * dim];
            let dup = kept
                .len()
                .checked_sub(dim)
                .map(|start| distance(&kept[start..], p) <= tol)
                .unwrap_or(false);
            if !dup {
                kept.extend_from_slice(p);
            }
        }
        self.coords = kept;
        self
    }
}

/// Euclidean distance between two points of the same dimension.
pub fn distance<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        let d = *x - *y;
        acc = acc + d * d;
    }
    acc.sqrt()
}

/// Symmetric Hausdorff distance between two nonempty clouds.
pub fn hausdorff_distance<T: Real>(a: &PointCloud<T>, b: &PointCloud<T>) -> Result<T> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let directed = |from: &PointCloud<T>, to: &PointCloud<T>| {
        let mut worst = T::zero();
        for p in from.iter_points() {
            let mut nearest = T::infinity();
            for q in to.iter_points() {
                let d = distance(p, q);
                if d < nearest {
                    nearest = d;
                }
            }
            if nearest > worst {
                worst = nearest;
            }
        }
        worst
    };
    Ok(directed(a, b).max(directed(b, a)))
}

/// Outcome of the sampled separation test for systems of any dimension.
///
/// `margin` is the smallest gap between distinct map images of `S_n` minus
/// the largest image diameter; `error_bound` bounds how far that sampled
/// margin can sit from the margin of the true attractor. For
/// one-dimensional systems the check is exact and the bound is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCheck<T> {
    pub margin: T,
    pub error_bound: T,
    pub separated: bool,
}

/// An affine iterated function system with a common contraction ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineIfs<T> {
    dim: usize,
    ratio: T,
    offsets: Vec<Vec<T>>,
}

impl<T: Real> AffineIfs<T> {
    /// Validate and build a system. Offsets are stored sorted
    /// lexicographically, so in one dimension they are ascending.
    pub fn new(dim: usize, ratio: T, offsets: Vec<Vec<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if offsets.is_empty() {
            return Err(Error::NoMaps);
        }
        if !ratio.is_finite() || ratio <= T::zero() || ratio >= T::one() {
            return Err(Error::InvalidRatio(format!("{ratio}")));
        }
        for (index, b) in offsets.iter().enumerate() {
            if b.len() != dim {
                return Err(Error::OffsetDimension {
                    index,
                    expected: dim,
                    found: b.len(),
                });
            }
            if b.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite {
                    what: "offset coordinate",
                });
            }
        }
        let mut order: Vec<usize> = (0..offsets.len()).collect();
        order.sort_by(|&i, &j| {
            offsets[i]
                .partial_cmp(&offsets[j])
                .expect("finite offsets are totally ordered")
        });
        for w in order.windows(2) {
            if offsets[w[0]] == offsets[w[1]] {
                return Err(Error::DuplicateOffset {
                    first: w[0],
                    second: w[1],
                });
            }
        }
        let offsets = order.into_iter().map(|i| offsets[i].clone()).collect();
        Ok(Self {
            dim,
            ratio,
            offsets,
        })
    }

    /// One-dimensional constructor from scalar offsets.
    pub fn new_1d(ratio: T, offsets: &[T]) -> Result<Self> {
        Self::new(1, ratio, offsets.iter().map(|&b| vec![b]).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ratio(&self) -> T {
        self.ratio
    }

    pub fn map_count(&self) -> usize {
        self.offsets.len()
    }

    pub fn offsets(&self) -> &[Vec<T>] {
        &self.offsets
    }

    /// Apply map `j`: `c * (x + b_j)`.
    pub fn apply_map(&self, j: usize, x: &[T]) -> Result<Vec<T>> {
        self.check_map_index(j)?;
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(x.iter()
            .zip(&self.offsets[j])
            .map(|(&xi, &bi)| self.ratio * (xi + bi))
            .collect())
    }

    fn check_map_index(&self, j: usize) -> Result<()> {
        if j >= self.map_count() {
            return Err(Error::MapIndexOutOfRange {
                index: j,
                count: self.map_count(),
            });
        }
        Ok(())
    }

    /// `1/c - 1`, the denominator that turns offsets into fixed points.
    ///
    /// Written this way (rather than `(1 - c)/c`) because for the ratios
    /// 1/3, 1/5, 1/6 the reciprocal rounds to the exact integer, which keeps
    /// fixed points and resolutions of the bundled systems exact in floats.
    fn inverse_ratio_minus_one(&self) -> T {
        T::one() / self.ratio - T::one()
    }

    /// The fixed point of each map: `x_j = b_j / (1/c - 1)`.
    pub fn fixed_points(&self) -> PointCloud<T> {
        let denom = self.inverse_ratio_minus_one();
        let mut cloud = PointCloud {
            dim: self.dim,
            coords: Vec::with_capacity(self.dim * self.map_count()),
        };
        for b in &self.offsets {
            let p: Vec<T> = b.iter().map(|&bi| bi / denom).collect();
            cloud.push(&p);
        }
        cloud
    }

    /// Extreme points of the convex hull of the fixed points: the canonical
    /// iteration seed. In one dimension these are the two endpoints, in two
    /// dimensions the hull vertices; higher dimensions fall back to the full
    /// fixed-point set.
    pub fn seed_points(&self) -> PointCloud<T> {
        let fixed = self.fixed_points();
        match self.dim {
            1 => {
                let mut lo = fixed.point(0)[0];
                let mut hi = lo;
                for p in fixed.iter_points() {
                    if p[0] < lo {
                        lo = p[0];
                    }
                    if p[0] > hi {
                        hi = p[0];
                    }
                }
                let coords = if lo == hi { vec![lo] } else { vec![lo, hi] };
                PointCloud { dim: 1, coords }
            }
            2 => convex_hull_vertices(&fixed),
            _ => fixed,
        }
    }

    /// Image of every point under every map, with floating duplicates merged.
    pub fn apply(&self, cloud: &PointCloud<T>) -> Result<PointCloud<T>> {
        if cloud.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: cloud.dim(),
            });
        }
        let mut out = PointCloud {
            dim: self.dim,
            coords: Vec::with_capacity(cloud.coords.len() * self.map_count()),
        };
        for j in 0..self.map_count() {
            for p in cloud.iter_points() {
                let q: Vec<T> = p
                    .iter()
                    .zip(&self.offsets[j])
                    .map(|(&xi, &bi)| self.ratio * (xi + bi))
                    .collect();
                out.push(&q);
            }
        }
        let tol = cast::<T>(1e-12) * (T::one() + out.bounding_span());
        Ok(out.dedup(tol))
    }

    /// `n`-fold application of the system to `seed`, refusing to materialize
    /// more than `cap` points at any step.
    pub fn iterate(&self, seed: &PointCloud<T>, n: usize, cap: usize) -> Result<PointCloud<T>> {
        if seed.is_empty() {
            return Err(Error::EmptyCloud);
        }
        let tol = cast::<T>(1e-12) * (T::one() + seed.bounding_span());
        let mut current = seed.clone().dedup(tol);
        for _ in 0..n {
            let projected = current.len().saturating_mul(self.map_count());
            if projected > cap {
                return Err(Error::PointCapExceeded { projected, cap });
            }
            current = self.apply(&current)?;
        }
        Ok(current)
    }

    /// Image of a cloud under the single map `j`, without deduplication.
    pub fn image(&self, j: usize, cloud: &PointCloud<T>) -> Result<PointCloud<T>> {
        self.check_map_index(j)?;
        if cloud.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: cloud.dim(),
            });
        }
        let mut out = PointCloud {
            dim: self.dim,
            coords: Vec::with_capacity(cloud.coords.len()),
        };
        for p in cloud.iter_points() {
            let q: Vec<T> = p
                .iter()
                .zip(&self.offsets[j])
                .map(|(&xi, &bi)| self.ratio * (xi + bi))
                .collect();
            out.push(&q);
        }
        Ok(out)
    }

    /// Minimum distance between the images of `cloud` under maps `j` and `k`.
    pub fn image_gap(&self, cloud: &PointCloud<T>, j: usize, k: usize) -> Result<T> {
        if j == k {
            return Err(Error::MapIndexOutOfRange {
                index: k,
                count: self.map_count(),
            });
        }
        let a = self.image(j, cloud)?;
        let b = self.image(k, cloud)?;
        if a.is_empty() {
            return Err(Error::EmptyCloud);
        }
        let mut best = T::infinity();
        for p in a.iter_points() {
            for q in b.iter_points() {
                let d = distance(p, q);
                if d < best {
                    best = d;
                }
            }
        }
        Ok(best)
    }

    fn require_1d(&self) -> Result<()> {
        if self.dim != 1 {
            return Err(Error::NotOneDimensional { dim: self.dim });
        }
        Ok(())
    }

    /// Gaps between consecutive offsets of a one-dimensional system.
    fn offset_gaps_1d(&self) -> Vec<T> {
        self.offsets.windows(2).map(|w| w[1][0] - w[0][0]).collect()
    }

    /// Attractor diameter of a one-dimensional system:
    /// `(b_max - b_min) / (1/c - 1)`.
    fn attractor_diameter_1d(&self) -> T {
        let span = self.offsets[self.map_count() - 1][0] - self.offsets[0][0];
        span / self.inverse_ratio_minus_one()
    }

    /// Exact separation test for one-dimensional systems: the images of the
    /// attractor are pairwise at least as far apart as the largest image
    /// diameter iff `2 * diam(A) <= min_j (b_{j+1} - b_j)`. Equality counts.
    pub fn is_well_separated_1d(&self) -> Result<bool> {
        self.require_1d()?;
        if self.map_count() == 1 {
            return Ok(true);
        }
        let two_diam = cast::<T>(2.0) * self.attractor_diameter_1d();
        let min_gap = self
            .offset_gaps_1d()
            .into_iter()
            .fold(T::infinity(), T::min);
        Ok(two_diam <= min_gap)
    }

    /// Sampled separation test on `S_n`. Exact in one dimension; otherwise
    /// the verdict allows the sampled margin to fall short by at most
    /// `2 * c^(n+1) * diam(S_n)`, the drift between `S_n` and the attractor.
    pub fn separation_check(&self, n: usize, cap: usize) -> Result<SeparationCheck<T>> {
        if self.dim == 1 {
            let separated = self.is_well_separated_1d()?;
            let margin = if self.map_count() == 1 {
                T::infinity()
            } else {
                let min_gap = self
                    .offset_gaps_1d()
                    .into_iter()
                    .fold(T::infinity(), T::min);
                let diam = self.attractor_diameter_1d();
                self.ratio * (min_gap - diam) - self.ratio * diam
            };
            return Ok(SeparationCheck {
                margin,
                error_bound: T::zero(),
                separated,
            });
        }
        let sample = self.iterate(&self.seed_points(), n, cap)?;
        if self.map_count() == 1 {
            return Ok(SeparationCheck {
                margin: T::infinity(),
                error_bound: T::zero(),
                separated: true,
            });
        }
        let mut min_gap = T::infinity();
        for j in 0..self.map_count() {
            for k in (j + 1)..self.map_count() {
                let g = self.image_gap(&sample, j, k)?;
                if g < min_gap {
                    min_gap = g;
                }
            }
        }
        let mut max_diam = T::zero();
        for j in 0..self.map_count() {
            let d = self.image(j, &sample)?.diameter()?;
            if d > max_diam {
                max_diam = d;
            }
        }
        let margin = min_gap - max_diam;
        let drift = cast::<T>(2.0) * self.ratio.powi(n as i32 + 1) * sample.diameter()?;
        Ok(SeparationCheck {
            margin,
            error_bound: drift,
            separated: margin >= -drift,
        })
    }

    /// Resolution sequence of a well-separated one-dimensional system:
    /// the attractor diameter followed by the descending gap scales
    /// `c * (gap_j - diameter)`.
    pub fn deltas_1d(&self) -> Result<Vec<T>> {
        self.require_1d()?;
        if !self.is_well_separated_1d()? {
            return Err(Error::NotWellSeparated);
        }
        Ok(self.resolution_candidates_1d())
    }

    /// The same sequence without the separation gate. For systems that are
    /// not well-separated the values no longer describe the attractor, which
    /// is exactly what verification uses to expose a bogus operator.
    pub fn resolution_candidates_1d(&self) -> Vec<T> {
        debug_assert_eq!(self.dim, 1);
        let diam = if self.map_count() == 1 {
            T::zero()
        } else {
            self.attractor_diameter_1d()
        };
        let mut rest: Vec<T> = self
            .offset_gaps_1d()
            .into_iter()
            .map(|a| self.ratio * (a - diam))
            .collect();
        rest.sort_by(|a, b| b.partial_cmp(a).expect("finite gaps"));
        let mut deltas = Vec::with_capacity(self.map_count());
        deltas.push(diam);
        deltas.extend(rest);
        deltas
    }

    /// True when every pairwise image gap stays the same (within a relative
    /// tolerance of 1e-9) across `S_0 .. S_n_max`. Constant separation is
    /// the geometric condition under which the landscape operator reproduces
    /// each empirical landscape from the previous one exactly.
    pub fn has_constant_separation(&self, n_max: usize, cap: usize) -> Result<bool> {
        if self.map_count() == 1 {
            return Ok(true);
        }
        let seed = self.seed_points();
        let mut cloud = seed.clone();
        let mut reference: Option<Vec<T>> = None;
        let scale = T::one() + cloud.bounding_span();
        let tol = cast::<T>(1e-9) * scale;
        for n in 0..=n_max {
            if n > 0 {
                let projected = cloud.len().saturating_mul(self.map_count());
                if projected > cap {
                    return Err(Error::PointCapExceeded { projected, cap });
                }
                cloud = self.apply(&cloud)?;
            }
            let mut gaps = Vec::new();
            for j in 0..self.map_count() {
                for k in (j + 1)..self.map_count() {
                    gaps.push(self.image_gap(&cloud, j, k)?);
                }
            }
            match &reference {
                None => reference = Some(gaps),
                Some(base) => {
                    for (g, b) in gaps.iter().zip(base) {
                        if (*g - *b).abs() > tol {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Vertices of the convex hull of a planar cloud, in counterclockwise order
/// starting from the lexicographic minimum. Collinear boundary points are
/// dropped so only extreme points remain.
fn convex_hull_vertices<T: Real>(cloud: &PointCloud<T>) -> PointCloud<T> {
    debug_assert_eq!(cloud.dim(), 2);
    let mut pts: Vec<(T, T)> = cloud.iter_points().map(|p| (p[0], p[1])).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() <= 2 {
        let coords = pts.into_iter().flat_map(|(x, y)| [x, y]).collect();
        return PointCloud { dim: 2, coords };
    }
    let span = {
        let sx = pts[pts.len() - 1].0 - pts[0].0;
        let mut lo = pts[0].1;
        let mut hi = pts[0].1;
        for &(_, y) in &pts {
            lo = lo.min(y);
            hi = hi.max(y);
        }
        (sx * sx + (hi - lo) * (hi - lo)).sqrt()
    };
    // Turns whose area is at this scale or below are treated as collinear.
    let eps = cast::<T>(1e-12) * (T::one() + span) * (T::one() + span);
    let cross =
        |o: (T, T), a: (T, T), b: (T, T)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let build = |iter: &mut dyn Iterator<Item = (T, T)>| {
        let mut chain: Vec<(T, T)> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= eps
            {
                chain.pop();
            }
            chain.push(p);
        }
        chain
    };
    let lower = build(&mut pts.iter().copied());
    let upper = build(&mut pts.iter().rev().copied());
    let mut hull = lower;
    let first = hull[0];
    hull.extend(upper.into_iter().skip(1).take_while(move |p| *p != first));
    let coords = hull.into_iter().flat_map(|(x, y)| [x, y]).collect();
    PointCloud { dim: 2, coords }
}
