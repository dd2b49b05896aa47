//! Krippendorff's alpha for arbitrary distance functions.
//!
//! With `m_u` values in unit `u` (only units with `m_u >= 2` are pairable) and
//! `n = sum(m_u)`:
//!
//! ```text
//! D_o = 1/n * sum_u 1/(m_u - 1) * sum_{i != j in u} d(v_i, v_j)
//! D_e = 1/(n (n - 1)) * sum_{i != j over all n pooled values} d(v_i, v_j)
//! alpha = 1 - D_o / D_e
//! ```
//!
//! Values are first collapsed to their distinct members (in `Ord` order) so
//! each distinct pair is measured once and sums run in a fixed order.

use serde::{Deserialize, Serialize};

use crate::distance::{Metric, Tier};
use crate::error::{Error, Result};
use crate::model::{AnnotationMatrix, AnnotationValue, EventLabel};
use crate::representations::{extract, RepresentationKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaResult {
    pub alpha: f64,
    #[serde(rename = "d_o")]
    pub observed_disagreement: f64,
    #[serde(rename = "d_e")]
    pub expected_disagreement: f64,
    /// Values in units with at least two values.
    pub n_pairable: usize,
    pub units_used: usize,
    /// Units with fewer than two values.
    pub units_dropped: usize,
}

/// Alpha over units of already-present values.
///
/// `distance` must be symmetric with `distance(x, x) == 0`; values equal under
/// `Ord` are never passed to it.
pub fn alpha_with<V, F>(units: &[Vec<V>], mut distance: F) -> Result<AlphaResult>
where
    V: Ord,
    F: FnMut(&V, &V) -> f64,
{
    let pairable: Vec<&Vec<V>> = units.iter().filter(|u| u.len() >= 2).collect();
    let units_used = pairable.len();
    let units_dropped = units.len() - units_used;
    if units_used == 0 {
        return Err(Error::NoPairableUnits);
    }

    let mut distinct: Vec<&V> = pairable.iter().flat_map(|u| u.iter()).collect();
    let n = distinct.len();
    distinct.sort();
    distinct.dedup();
    let k = distinct.len();

    // Per-unit (distinct index, count) lists and pooled counts.
    let mut pooled = vec![0usize; k];
    let unit_counts: Vec<Vec<(usize, usize)>> = pairable
        .iter()
        .map(|u| {
            let mut idx: Vec<usize> = u
                .iter()
                .map(|v| distinct.binary_search(&v).expect("value was pooled"))
                .collect();
            idx.sort_unstable();
            let mut counts: Vec<(usize, usize)> = Vec::new();
            for i in idx {
                pooled[i] += 1;
                match counts.last_mut() {
                    Some((last, c)) if *last == i => *c += 1,
                    _ => counts.push((i, 1)),
                }
            }
            counts
        })
        .collect();

    // Upper-triangular distance table over distinct values.
    let mut table = vec![0.0f64; k * k];
    for i in 0..k {
        for j in i + 1..k {
            table[i * k + j] = distance(distinct[i], distinct[j]);
        }
    }

    let mut observed = 0.0;
    for counts in &unit_counts {
        let m: usize = counts.iter().map(|&(_, c)| c).sum();
        let mut within = 0.0;
        for (a, &(i, ci)) in counts.iter().enumerate() {
            for &(j, cj) in &counts[a + 1..] {
                within += 2.0 * (ci * cj) as f64 * table[i * k + j];
            }
        }
        observed += within / (m - 1) as f64;
    }
    let observed = observed / n as f64;

    let mut expected = 0.0;
    for i in 0..k {
        for j in i + 1..k {
            expected += 2.0 * (pooled[i] * pooled[j]) as f64 * table[i * k + j];
        }
    }
    let expected = expected / (n * (n - 1)) as f64;

    if expected == 0.0 {
        return Err(Error::DegenerateData);
    }

    Ok(AlphaResult {
        alpha: 1.0 - observed / expected,
        observed_disagreement: observed,
        expected_disagreement: expected,
        n_pairable: n,
        units_used,
        units_dropped,
    })
}

pub fn krippendorff_alpha(matrix: &AnnotationMatrix, metric: Metric) -> Result<AlphaResult> {
    if let Some(found) = matrix.kind() {
        if found != metric.value_kind() {
            return Err(Error::KindMismatch {
                expected: metric.value_kind(),
                found,
            });
        }
    }
    let units = matrix.present_values();
    alpha_with(&units, |a: &&AnnotationValue, b: &&AnnotationValue| {
        metric.distance(a, b).expect("matrix kind matches metric")
    })
}

/// Extracts `kind` from a graph matrix and computes alpha at `tier`.
pub fn alpha_for_representation(
    graphs: &AnnotationMatrix,
    kind: RepresentationKind,
    tier: Tier,
    target: &EventLabel,
) -> Result<AlphaResult> {
    let extracted = extract(graphs, kind, target)?;
    krippendorff_alpha(&extracted, kind.distance_spec(tier).resolve())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::nominal_distance;

    fn nominal(rows: &[&[Option<&str>]]) -> Result<AlphaResult> {
        krippendorff_alpha(
            &AnnotationMatrix::categorical(rows).unwrap(),
            Metric::Nominal,
        )
    }

    #[test]
    fn hand_enumerated_zero() {
        let r = nominal(&[&[Some("a"), Some("a")], &[Some("a"), Some("b")]]).unwrap();
        assert_eq!(r.observed_disagreement, 0.5);
        assert_eq!(r.expected_disagreement, 0.5);
        assert_eq!(r.alpha, 0.0);
        assert_eq!(r.n_pairable, 4);
    }

    #[test]
    fn perfect_agreement() {
        let r = nominal(&[
            &[Some("a"), Some("a"), Some("a")],
            &[Some("b"), Some("b"), None],
        ])
        .unwrap();
        assert_eq!(r.alpha, 1.0);
        assert_eq!(r.observed_disagreement, 0.0);
    }

    #[test]
    fn degenerate() {
        assert!(matches!(
            nominal(&[&[Some("a"), Some("a")], &[Some("a"), Some("a")]]),
            Err(Error::DegenerateData)
        ));
    }

    #[test]
    fn no_pairable_units() {
        assert!(matches!(
            nominal(&[&[Some("a"), None], &[None, Some("b")]]),
            Err(Error::NoPairableUnits)
        ));
        assert!(matches!(nominal(&[]), Err(Error::NoPairableUnits)));
    }

    #[test]
    fn singleton_units_are_dropped() {
        let r = nominal(&[
            &[Some("a"), Some("a")],
            &[Some("a"), Some("b")],
            &[Some("c"), None],
        ])
        .unwrap();
        assert_eq!(r.units_used, 2);
        assert_eq!(r.units_dropped, 1);
        assert_eq!(r.alpha, 0.0);
    }

    #[test]
    fn krippendorff_reference_example() {
        // Nominal reliability-data example from Krippendorff (2011), alpha = 0.743.
        let data: [[Option<u8>; 12]; 4] = [
            [
                Some(1),
                Some(2),
                Some(3),
                Some(3),
                Some(2),
                Some(1),
                Some(4),
                Some(1),
                Some(2),
                None,
                None,
                None,
            ],
            [
                Some(1),
                Some(2),
                Some(3),
                Some(3),
                Some(2),
                Some(2),
                Some(4),
                Some(1),
                Some(2),
                Some(5),
                None,
                Some(3),
            ],
            [
                None,
                Some(3),
                Some(3),
                Some(3),
                Some(2),
                Some(3),
                Some(4),
                Some(2),
                Some(2),
                Some(5),
                Some(1),
                None,
            ],
            [
                Some(1),
                Some(2),
                Some(3),
                Some(3),
                Some(2),
                Some(4),
                Some(4),
                Some(1),
                Some(2),
                Some(5),
                Some(1),
                None,
            ],
        ];
        let units: Vec<Vec<u8>> = (0..12)
            .map(|u| data.iter().filter_map(|row| row[u]).collect())
            .collect();
        let r = alpha_with(&units, |a, b| {
            nominal_distance(&a.to_string(), &b.to_string())
        })
        .unwrap();
        assert!((r.alpha - 0.743).abs() < 5e-4, "{}", r.alpha);
        assert_eq!(r.units_dropped, 1);
    }

    #[test]
    fn kind_mismatch() {
        let m = AnnotationMatrix::categorical(&[&[Some("a"), Some("b")]]).unwrap();
        assert!(matches!(
            krippendorff_alpha(&m, Metric::SetJaccard),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn serializes_with_short_names() {
        let r = nominal(&[&[Some("a"), Some("a")], &[Some("a"), Some("b")]]).unwrap();
        let v = serde_json::to_value(r).unwrap();
        for key in [
            "alpha",
            "d_o",
            "d_e",
            "n_pairable",
            "units_used",
            "units_dropped",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
