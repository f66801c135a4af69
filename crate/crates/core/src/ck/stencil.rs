//! Second-order finite differences: central in the interior, one-sided at
//! the two ends of each component.

use std::ops::Range;

use super::GridDomain;
use crate::normed::Vector;

/// First derivative at position `i` of `f` with spacing `h`.
pub fn d1(f: &[Vector], i: usize, h: f64) -> Vector {
    let n = f.len();
    let combo = |terms: &[(f64, usize)], denom: f64| -> Vector {
        let mut acc = Vector::zeros(f[0].dim());
        for &(c, j) in terms {
            acc = acc.axpy(c, &f[j]);
        }
        acc.scale(1.0 / denom)
    };
    if i == 0 {
        combo(&[(-3.0, 0), (4.0, 1), (-1.0, 2)], 2.0 * h)
    } else if i == n - 1 {
        combo(&[(3.0, n - 1), (-4.0, n - 2), (1.0, n - 3)], 2.0 * h)
    } else {
        combo(&[(1.0, i + 1), (-1.0, i - 1)], 2.0 * h)
    }
}

/// Second derivative at position `i`.
pub fn d2(f: &[Vector], i: usize, h: f64) -> Vector {
    let n = f.len();
    let combo = |terms: &[(f64, usize)]| -> Vector {
        let mut acc = Vector::zeros(f[0].dim());
        for &(c, j) in terms {
            acc = acc.axpy(c, &f[j]);
        }
        acc.scale(1.0 / (h * h))
    };
    if i == 0 {
        combo(&[(2.0, 0), (-5.0, 1), (4.0, 2), (-1.0, 3)])
    } else if i == n - 1 {
        combo(&[(2.0, n - 1), (-5.0, n - 2), (4.0, n - 3), (-1.0, n - 4)])
    } else {
        combo(&[(1.0, i + 1), (-2.0, i), (1.0, i - 1)])
    }
}

pub(crate) fn apply(
    grid: &GridDomain,
    ranges: &[Range<usize>],
    values: &[Vector],
    op: fn(&[Vector], usize, f64) -> Vector,
) -> Vec<Vector> {
    let mut out = Vec::with_capacity(values.len());
    for (c, r) in grid.components().iter().zip(ranges) {
        let seg = &values[r.clone()];
        for i in 0..seg.len() {
            out.push(op(seg, i, c.step));
        }
    }
    out
}
