//! Inter-cluster distances between the two class clusters of a topic:
//! single, complete, average and centroid linkage over Euclidean distance.

use serde::Serialize;

use crate::error::{Error, Result};

/// A set of points of equal dimension, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Points {
    dims: usize,
    data: Vec<f64>,
}

impl Points {
    pub fn new(dims: usize) -> Self {
        Self {
            dims,
            data: Vec::new(),
        }
    }

    pub fn with_capacity(dims: usize, n: usize) -> Self {
        Self {
            dims,
            data: Vec::with_capacity(dims * n),
        }
    }

    pub fn from_rows<R: AsRef<[f64]>>(dims: usize, rows: &[R]) -> Result<Self> {
        let mut p = Self::with_capacity(dims, rows.len());
        for r in rows {
            p.push(r.as_ref())?;
        }
        Ok(p)
    }

    pub fn push(&mut self, point: &[f64]) -> Result<()> {
        if point.len() != self.dims {
            return Err(Error::Shape {
                expected: self.dims,
                got: point.len(),
            });
        }
        self.data.extend_from_slice(point);
        Ok(())
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.dims).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.dims.max(1))
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.data[i * self.dims..(i + 1) * self.dims]
    }

    /// Coordinate-wise mean.
    pub fn centroid(&self) -> Vec<f64> {
        let mut sums = vec![NeumaierSum::default(); self.dims];
        for p in self.iter() {
            for (s, &x) in sums.iter_mut().zip(p) {
                s.add(x);
            }
        }
        let n = self.len() as f64;
        sums.into_iter().map(|s| s.total() / n).collect()
    }
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// The four linkage values for one topic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceReport {
    pub topic_id: usize,
    /// MinD
    pub single_link: f64,
    /// MaxD
    pub complete_link: f64,
    /// MeanD
    pub average_link: f64,
    /// CentroidD
    pub centroid_link: f64,
}

#[inline]
fn squared(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (b - a) * (b - a)).sum()
}

pub fn euclidean(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Shape {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(squared(x, y).sqrt())
}

fn check_pair(c1: &Points, c2: &Points) -> Result<()> {
    if c1.is_empty() || c2.is_empty() {
        return Err(Error::EmptyCluster(format!(
            "cluster sizes {} and {}",
            c1.len(),
            c2.len()
        )));
    }
    if c1.dims() != c2.dims() {
        return Err(Error::Shape {
            expected: c1.dims(),
            got: c2.dims(),
        });
    }
    Ok(())
}

pub fn single_link(c1: &Points, c2: &Points) -> Result<f64> {
    check_pair(c1, c2)?;
    let mut best = f64::INFINITY;
    for x in c1.iter() {
        for y in c2.iter() {
            best = best.min(squared(x, y));
        }
    }
    Ok(best.sqrt())
}

pub fn complete_link(c1: &Points, c2: &Points) -> Result<f64> {
    check_pair(c1, c2)?;
    let mut worst = 0.0f64;
    for x in c1.iter() {
        for y in c2.iter() {
            worst = worst.max(squared(x, y));
        }
    }
    Ok(worst.sqrt())
}

pub fn average_link(c1: &Points, c2: &Points) -> Result<f64> {
    check_pair(c1, c2)?;
    let mut sum = NeumaierSum::default();
    for x in c1.iter() {
        for y in c2.iter() {
            sum.add(squared(x, y).sqrt());
        }
    }
    Ok(sum.total() / (c1.len() * c2.len()) as f64)
}

pub fn centroid_link(c1: &Points, c2: &Points) -> Result<f64> {
    check_pair(c1, c2)?;
    euclidean(&c1.centroid(), &c2.centroid())
}

/// All four metrics in a single sweep over the point pairs.
pub fn all_metrics(topic_id: usize, c1: &Points, c2: &Points) -> Result<DistanceReport> {
    check_pair(c1, c2)?;
    let mut min_sq = f64::INFINITY;
    let mut max_sq = 0.0f64;
    let mut sum = NeumaierSum::default();
    for x in c1.iter() {
        for y in c2.iter() {
            let sq = squared(x, y);
            min_sq = min_sq.min(sq);
            max_sq = max_sq.max(sq);
            sum.add(sq.sqrt());
        }
    }
    let centroid = euclidean(&c1.centroid(), &c2.centroid())?;
    Ok(DistanceReport {
        topic_id,
        single_link: min_sq.sqrt(),
        complete_link: max_sq.sqrt(),
        average_link: sum.total() / (c1.len() * c2.len()) as f64,
        centroid_link: centroid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[&[f64]]) -> Points {
        Points::from_rows(rows[0].len(), rows).unwrap()
    }

    fn square() -> (Points, Points) {
        (
            pts(&[&[0.0, 0.0], &[1.0, 0.0]]),
            pts(&[&[0.0, 1.0], &[1.0, 1.0]]),
        )
    }

    #[test]
    fn euclidean_basics() {
        assert_eq!(euclidean(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(euclidean(&[1.5, -2.0], &[1.5, -2.0]).unwrap(), 0.0);
        let d = euclidean(&[0.0; 5], &[1.0; 5]).unwrap();
        assert!((d - 5f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            euclidean(&[0.0], &[0.0, 1.0]),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn unit_square_clusters() {
        let (a, b) = square();
        assert_eq!(single_link(&a, &b).unwrap(), 1.0);
        assert!((complete_link(&a, &b).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!((average_link(&a, &b).unwrap() - (1.0 + 2f64.sqrt()) / 2.0).abs() < 1e-15);
        assert_eq!(centroid_link(&a, &b).unwrap(), 1.0);
        let r = all_metrics(0, &a, &b).unwrap();
        assert_eq!(r.single_link, 1.0);
        assert!((r.complete_link - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((r.average_link - 1.207_106_781_186_547_5).abs() < 1e-12);
        assert_eq!(r.centroid_link, 1.0);
    }

    #[test]
    fn singletons_agree_with_euclidean() {
        let a = pts(&[&[0.0, 0.0]]);
        let b = pts(&[&[3.0, 4.0]]);
        for f in [single_link, complete_link, average_link, centroid_link] {
            assert_eq!(f(&a, &b).unwrap(), 5.0);
        }
        for f in [single_link, complete_link, average_link, centroid_link] {
            assert_eq!(f(&a, &a).unwrap(), 0.0);
        }
    }

    #[test]
    fn shared_point_gives_zero_single_link() {
        let a = pts(&[&[0.0, 2.0], &[5.0, 5.0]]);
        let b = pts(&[&[9.0, 9.0], &[5.0, 5.0]]);
        assert_eq!(single_link(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn repeated_point_average_is_zero() {
        let a = pts(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let b = pts(&[&[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0]]);
        assert_eq!(average_link(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn mirrored_clusters_share_centroid() {
        let a = pts(&[&[-1.0, 0.0], &[1.0, 0.0]]);
        let b = pts(&[&[0.0, -1.0], &[0.0, 1.0]]);
        assert_eq!(centroid_link(&a, &b).unwrap(), 0.0);
        assert!(single_link(&a, &b).unwrap() > 0.0);
    }

    #[test]
    fn all_zero_projection() {
        let a = pts(&[&[0.0; 5], &[0.0; 5]]);
        let b = pts(&[&[0.0; 5]]);
        let r = all_metrics(3, &a, &b).unwrap();
        assert_eq!(
            (
                r.single_link,
                r.complete_link,
                r.average_link,
                r.centroid_link
            ),
            (0.0, 0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn empty_and_mismatched_clusters() {
        let a = pts(&[&[0.0, 0.0]]);
        let empty = Points::new(2);
        assert!(matches!(
            single_link(&a, &empty),
            Err(Error::EmptyCluster(_))
        ));
        assert!(matches!(
            all_metrics(0, &empty, &a),
            Err(Error::EmptyCluster(_))
        ));
        let b = pts(&[&[0.0]]);
        assert!(matches!(average_link(&a, &b), Err(Error::Shape { .. })));
    }
}
