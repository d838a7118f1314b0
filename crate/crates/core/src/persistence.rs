//! Degree-0 persistence of finite point clouds.
//!
//! Connected components of the Vietoris–Rips (equivalently Čech) filtration
//! of a finite cloud merge exactly at the edge weights of a Euclidean
//! minimum spanning tree, so H0 persistence reduces to computing that
//! weight multiset. Every component is born at scale zero; the class that
//! never dies is assigned the cloud diameter as its death so that diagrams
//! of self-similar clouds satisfy the same recursion as their landscapes.

use std::io::Write;

use crate::error::{Error, Result};
use crate::ifs::{distance, PointCloud};
use crate::num::{round_sig12, Real};

/// Merge scales of a cloud: the `n - 1` minimum-spanning-tree edge weights,
/// sorted descending. Raw floating values, no canonicalization.
#[derive(Debug, Clone, PartialEq)]
pub struct MstProfile<T> {
    weights: Vec<T>,
}

impl<T: Real> MstProfile<T> {
    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Minimum-spanning-tree edge weights of the complete Euclidean graph on
/// `cloud`, via dense Prim in O(n^2) time and O(n) memory. Ties resolve to
/// the smallest vertex index, so the scan order is deterministic; the
/// resulting weight multiset is the same for every minimum spanning tree.
pub fn mst_profile<T: Real>(cloud: &PointCloud<T>) -> Result<MstProfile<T>> {
    let n = cloud.len();
    if n == 0 {
        return Err(Error::EmptyCloud);
    }
    let mut weights = Vec::with_capacity(n.saturating_sub(1));
    if n > 1 {
        let mut in_tree = vec![false; n];
        let mut best = vec![T::infinity(); n];
        in_tree[0] = true;
        for (v, b) in best.iter_mut().enumerate().skip(1) {
            *b = distance(cloud.point(0), cloud.point(v));
        }
        for _ in 1..n {
            let mut u = usize::MAX;
            let mut w = T::infinity();
            for v in 0..n {
                if !in_tree[v] && best[v] < w {
                    w = best[v];
                    u = v;
                }
            }
            in_tree[u] = true;
            weights.push(w);
            for v in 0..n {
                if !in_tree[v] {
                    let d = distance(cloud.point(u), cloud.point(v));
                    if d < best[v] {
                        best[v] = d;
                    }
                }
            }
        }
    }
    weights.sort_by(|a, b| b.partial_cmp(a).expect("finite weights"));
    Ok(MstProfile { weights })
}

/// Number of connected components of the cloud at scale `eps`, where points
/// within distance `eps` (inclusive) of each other are connected. Equals
/// one plus the number of merge scales strictly above `eps`; both sides of
/// that comparison are canonicalized to 12 significant digits so that
/// merges happening "at" a power-of-c scale count as equalities.
pub fn epsilon_components<T: Real>(cloud: &PointCloud<T>, eps: T) -> Result<usize> {
    if !eps.is_finite() || eps < T::zero() {
        return Err(Error::InvalidThreshold(format!("{eps}")));
    }
    let profile = mst_profile(cloud)?;
    let eps = round_sig12(eps);
    Ok(1 + profile
        .weights()
        .iter()
        .filter(|&&w| round_sig12(w) > eps)
        .count())
}

/// One diagram entry: a birth/death pair with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair<T> {
    pub birth: T,
    pub death: T,
    pub multiplicity: usize,
}

/// A persistence diagram: pairs sorted by death descending, no two entries
/// sharing the same (birth, death), every multiplicity positive.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram<T> {
    pairs: Vec<PersistencePair<T>>,
}

impl<T: Real> PersistenceDiagram<T> {
    /// Canonicalize a list of pairs: validates finiteness and `death >=
    /// birth >= 0`, merges duplicate (birth, death) entries, sorts by death
    /// descending (ties by birth ascending).
    pub fn new(pairs: Vec<PersistencePair<T>>) -> Result<Self> {
        for p in &pairs {
            if !p.birth.is_finite() || !p.death.is_finite() {
                return Err(Error::InvalidDiagram("non-finite pair".into()));
            }
            if p.birth < T::zero() {
                return Err(Error::InvalidDiagram(format!("negative birth {}", p.birth)));
            }
            if p.death < p.birth {
                return Err(Error::InvalidDiagram(format!(
                    "death {} precedes birth {}",
                    p.death, p.birth
                )));
            }
            if p.multiplicity == 0 {
                return Err(Error::InvalidDiagram("zero multiplicity".into()));
            }
        }
        let mut pairs = pairs;
        pairs.sort_by(|a, b| {
            b.death
                .partial_cmp(&a.death)
                .expect("finite deaths")
                .then(a.birth.partial_cmp(&b.birth).expect("finite births"))
        });
        let mut merged: Vec<PersistencePair<T>> = Vec::with_capacity(pairs.len());
        for p in pairs {
            match merged.last_mut() {
                Some(last) if last.birth == p.birth && last.death == p.death => {
                    last.multiplicity += p.multiplicity;
                }
                _ => merged.push(p),
            }
        }
        Ok(Self { pairs: merged })
    }

    pub fn pairs(&self) -> &[PersistencePair<T>] {
        &self.pairs
    }

    pub fn total_multiplicity(&self) -> usize {
        self.pairs.iter().map(|p| p.multiplicity).sum()
    }

    /// All classes born at scale zero?
    pub fn births_all_zero(&self) -> bool {
        self.pairs.iter().all(|p| p.birth == T::zero())
    }

    /// Write the diagram as CSV with header `birth,death,multiplicity`,
    /// rows in death-descending order. Numbers round-trip exactly.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "birth,death,multiplicity")?;
        for p in &self.pairs {
            writeln!(w, "{},{},{}", p.birth, p.death, p.multiplicity)?;
        }
        Ok(())
    }
}

/// Degree-0 persistence diagram of a cloud: one pair `(0, w)` for every
/// merge scale plus `(0, diameter)` for the essential class. Deaths that
/// agree to 12 significant digits are aggregated into a single entry, which
/// collapses the ulp-level noise between equal merge scales of self-similar
/// clouds into honest multiplicities. Each entry keeps the largest raw
/// death of its class rather than the rounded key, so stored deaths stay
/// within float noise of the exact merge scales.
pub fn h0_diagram<T: Real>(cloud: &PointCloud<T>) -> Result<PersistenceDiagram<T>> {
    let profile = mst_profile(cloud)?;
    let mut deaths: Vec<T> = profile.weights().to_vec();
    deaths.push(cloud.diameter()?);
    deaths.sort_by(|a, b| b.partial_cmp(a).expect("finite deaths"));
    // Rounding to significant digits is monotone, so members of a class are
    // contiguous in sorted order and the first one seen is the largest.
    let mut pairs: Vec<PersistencePair<T>> = Vec::new();
    let mut last_key = T::nan();
    for d in deaths {
        let key = round_sig12(d);
        match pairs.last_mut() {
            Some(last) if key == last_key => last.multiplicity += 1,
            _ => {
                pairs.push(PersistencePair {
                    birth: T::zero(),
                    death: d,
                    multiplicity: 1,
                });
                last_key = key;
            }
        }
    }
    PersistenceDiagram::new(pairs)
}

/// Empirical resolution estimates from a cloud: the diameter followed by
/// the `m - 1` largest merge scales, raw (uncanonicalized) values. On
/// `S_n` of a well-separated system these converge to the exact
/// resolutions at rate `2 c^n diam`.
pub fn empirical_deltas<T: Real>(cloud: &PointCloud<T>, m: usize) -> Result<Vec<T>> {
    if m > cloud.len() {
        return Err(Error::TooManyDeltas {
            requested: m,
            available: cloud.len(),
        });
    }
    let mut out = Vec::with_capacity(m);
    if m == 0 {
        return Ok(out);
    }
    out.push(cloud.diameter()?);
    let profile = mst_profile(cloud)?;
    out.extend_from_slice(&profile.weights()[..m - 1]);
    Ok(out)
}
