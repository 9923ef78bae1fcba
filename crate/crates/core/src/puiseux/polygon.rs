//! Newton polygon: lower hull of coefficient valuations.

use super::LYPoly;
use crate::error::{Error, Result};
use crate::series::YPoly;
use crate::Rational;
use num_integer::Integer as NumInteger;

/// One lower-hull segment. `slope` is the drop rate of the valuation per
/// unit of y-degree, i.e. the candidate order of the roots the segment
/// carries; `lattice_length` counts the lattice steps along the segment,
/// which is the number of roots (with multiplicity) of that order.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonSegment {
    pub slope: Rational,
    pub lattice_length: u32,
    pub from: (usize, i64),
    pub to: (usize, i64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolygon {
    points: Vec<(usize, i64)>,
    segments: Vec<PolygonSegment>,
}

impl NewtonPolygon {
    /// The valuation points (i, ord_x of the y^i coefficient), nonzero
    /// coefficients only.
    pub fn points(&self) -> &[(usize, i64)] {
        &self.points
    }

    /// Hull segments sorted by increasing slope.
    pub fn segments(&self) -> &[PolygonSegment] {
        &self.segments
    }
}

pub fn newton_polygon(p: &YPoly) -> Result<NewtonPolygon> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.deg_y() == 0 {
        return Err(Error::ConstantInY);
    }
    let lp = LYPoly::from_ypoly(p)?;
    Ok(polygon_of(&lp))
}

pub(crate) fn polygon_of(p: &LYPoly) -> NewtonPolygon {
    let points: Vec<(usize, i64)> = p
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.ord_grid().map(|o| (i, o)))
        .collect();
    let hull = lower_hull(&points);
    let mut segments: Vec<PolygonSegment> = hull
        .windows(2)
        .map(|w| {
            let (i0, v0) = w[0];
            let (i1, v1) = w[1];
            let di = (i1 - i0) as i64;
            let dv = v0 - v1;
            PolygonSegment {
                slope: Rational::new(dv.into(), di.into()),
                lattice_length: di.gcd(&dv.abs()) as u32,
                from: (i0, v0),
                to: (i1, v1),
            }
        })
        .collect();
    segments.sort_by(|a, b| a.slope.cmp(&b.slope));
    NewtonPolygon { points, segments }
}

fn lower_hull(points: &[(usize, i64)]) -> Vec<(usize, i64)> {
    // points come sorted by i (they are built from an indexed scan)
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 as i64 - a.0 as i64) * (p.1 - b.1)
                - (b.1 - a.1) * (p.0 as i64 - b.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}
