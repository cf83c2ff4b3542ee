//! Generators for extremal configurations: Lenz point sets on pairwise
//! orthogonal circles of radius 1/sqrt(2), pattern variants that assign
//! graph classes to circle planes, and regular simplices.
//!
//! Circle angles are kept as exact rational fractions of a full turn and
//! recorded in a sidecar alongside the floating-point coordinates, so every
//! construction is reproducible bit for bit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{GeomError, Point, PointSet};
use crate::graphs::SmallGraph;
use crate::Rat;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("the construction needs d >= 4, got {0}")]
    DimensionTooSmall(u32),
    #[error("clique mode needs even d, got {0}")]
    OddDimensionClique(u32),
    #[error("need at least {min} points for d = {d}, got {n}")]
    TooFewPoints { d: u32, n: usize, min: usize },
    #[error("clique mode places between t and 2t points; got n = {n} with t = {t}")]
    CliqueModeSize { n: usize, t: usize },
    #[error("too many points per circle for the generic angle schedule: {0}")]
    TooManyPerCircle(usize),
    #[error("pattern classes {a} and {b} are adjacent but share plane {plane}")]
    OrthogonalityViolated { a: usize, b: usize, plane: usize },
    #[error("pattern needs 2 * {planes} distinct planes <= d = {d}")]
    NotEnoughDimensions { planes: usize, d: u32 },
    #[error("plane index {0} out of range for d = {1}")]
    BadPlane(usize, u32),
    #[error("geometry error: {0}")]
    Geom(#[from] GeomError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LenzMode {
    /// Many points per circle, paired at quarter-turn separation.
    Rich,
    /// One point or one quarter-turn pair per circle.
    Clique,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LenzSpec {
    pub d: u32,
    pub n: usize,
    pub mode: LenzMode,
    pub angle_seed: u64,
}

/// Exact construction parameters; angles are rational turn fractions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LenzParams {
    pub d: u32,
    pub n: usize,
    pub mode: LenzMode,
    pub angle_seed: u64,
    pub circles: Vec<CircleParams>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CircleParams {
    /// Zero-based coordinate axes spanning the circle's plane.
    pub axes: (usize, usize),
    /// Angles of the points, as rational fractions of a full turn.
    pub turns: Vec<String>,
}

const RADIUS: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn turn_point(d: u32, axes: (usize, usize), turn: &Rat) -> Point {
    let theta = 2.0 * std::f64::consts::PI * rat_to_f64(turn);
    let mut coords = vec![0.0f64; d as usize];
    coords[axes.0] = RADIUS * theta.cos();
    coords[axes.1] = RADIUS * theta.sin();
    Point::from_f64(&coords)
}

fn rat_to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("small rational")
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Angles for `m` points on one circle: quarter-turn pairs whose base
/// angles advance by a generic step just under 1/pairs of a turn, plus a
/// per-circle phase. The 389-denominator step admits no quarter- or
/// half-turn coincidences between distinct pairs, so the only unit
/// distances within a circle are the intended ones.
fn circle_turns(m: usize, circle_idx: usize, seed: u64) -> Result<Vec<Rat>, ConstructionError> {
    if m > 388 {
        return Err(ConstructionError::TooManyPerCircle(m));
    }
    let pairs = m.div_ceil(2);
    let phase = rat((circle_idx as i64 + 1) % 971, 971)
        + rat((seed % 997) as i64, 997_000);
    let step = if pairs > 0 {
        rat(388, 389 * pairs as i64)
    } else {
        Rat::from_integer(0.into())
    };
    let quarter = rat(1, 4);
    let mut turns = Vec::with_capacity(m);
    for i in 0..m {
        let pair = (i / 2) as i64;
        let base = phase.clone() + step.clone() * Rat::from_integer(pair.into());
        if i % 2 == 0 {
            if i == m - 1 && m % 2 == 1 && m > 1 {
                // odd tail: pair it with the very first point instead
                turns.push(phase.clone() - quarter.clone());
            } else {
                turns.push(base);
            }
        } else {
            turns.push(base + quarter.clone());
        }
    }
    Ok(turns)
}

/// Lenz configuration: t = floor(d/2) circles of radius 1/sqrt(2) in the
/// coordinate planes (2i, 2i+1). Every cross-circle distance is exactly 1;
/// within a circle, points at quarter-turn separation are at distance 1.
pub fn lenz(spec: &LenzSpec) -> Result<(PointSet, LenzParams), ConstructionError> {
    if spec.d < 4 {
        return Err(ConstructionError::DimensionTooSmall(spec.d));
    }
    let t = (spec.d / 2) as usize;
    let counts: Vec<usize> = match spec.mode {
        LenzMode::Rich => {
            if spec.n < t {
                return Err(ConstructionError::TooFewPoints {
                    d: spec.d,
                    n: spec.n,
                    min: t,
                });
            }
            // floor(n/t) or ceil(n/t) per circle
            let base = spec.n / t;
            let extra = spec.n % t;
            (0..t).map(|c| base + usize::from(c < extra)).collect()
        }
        LenzMode::Clique => {
            if spec.d % 2 == 1 {
                return Err(ConstructionError::OddDimensionClique(spec.d));
            }
            if spec.n < t || spec.n > 2 * t {
                return Err(ConstructionError::CliqueModeSize { n: spec.n, t });
            }
            // pairs on the first n - t circles, singles on the rest
            (0..t).map(|c| if c < spec.n - t { 2 } else { 1 }).collect()
        }
    };
    let mut points = Vec::with_capacity(spec.n);
    let mut circles = Vec::with_capacity(t);
    for (c, &m) in counts.iter().enumerate() {
        let axes = (2 * c, 2 * c + 1);
        let turns = circle_turns(m, c, spec.angle_seed)?;
        for turn in &turns {
            points.push(turn_point(spec.d, axes, turn));
        }
        circles.push(CircleParams {
            axes,
            turns: turns.iter().map(Rat::to_string).collect(),
        });
    }
    let label = format!("lenz-d{}-n{}-{:?}", spec.d, spec.n, spec.mode);
    let ps = PointSet::new(points, label, 1e-12)?;
    Ok((
        ps,
        LenzParams {
            d: spec.d,
            n: spec.n,
            mode: spec.mode,
            angle_seed: spec.angle_seed,
            circles,
        },
    ))
}

/// One circle per pattern class, on the plane assigned to it. Adjacent
/// classes must sit on distinct (hence orthogonal) coordinate planes and
/// 2 * (number of distinct planes) must fit in d.
pub fn lenz_pattern(
    g: &SmallGraph,
    plane_assignment: &[usize],
    points_per_class: usize,
    d: u32,
    seed: u64,
) -> Result<(Vec<PointSet>, LenzParams), ConstructionError> {
    let k = g.k();
    assert_eq!(plane_assignment.len(), k, "one plane per class");
    let mut distinct: Vec<usize> = plane_assignment.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if 2 * distinct.len() > d as usize {
        return Err(ConstructionError::NotEnoughDimensions {
            planes: distinct.len(),
            d,
        });
    }
    for &p in &distinct {
        if 2 * p + 1 >= d as usize {
            return Err(ConstructionError::BadPlane(p, d));
        }
    }
    for (a, b) in g.edges() {
        if plane_assignment[a] == plane_assignment[b] {
            return Err(ConstructionError::OrthogonalityViolated {
                a: a + 1,
                b: b + 1,
                plane: plane_assignment[a],
            });
        }
    }
    let mut classes = Vec::with_capacity(k);
    let mut circles = Vec::with_capacity(k);
    for (class, &plane) in plane_assignment.iter().enumerate() {
        let axes = (2 * plane, 2 * plane + 1);
        // distinct phase per class so same-plane classes never collide
        let turns = circle_turns(points_per_class, class, seed)?;
        let pts: Vec<Point> = turns.iter().map(|t| turn_point(d, axes, t)).collect();
        classes.push(PointSet::new(
            pts,
            format!("pattern-class-{}", class + 1),
            1e-12,
        )?);
        circles.push(CircleParams {
            axes,
            turns: turns.iter().map(Rat::to_string).collect(),
        });
    }
    Ok((
        classes,
        LenzParams {
            d,
            n: k * points_per_class,
            mode: LenzMode::Rich,
            angle_seed: seed,
            circles,
        },
    ))
}

/// d+1 points in R^d with all pairwise distances equal to `scale`.
/// Constructed from the scaled standard basis of R^{d+1} expressed in a
/// Helmert orthonormal basis of the hyperplane it spans.
pub fn regular_simplex(d: u32, scale: f64) -> Result<PointSet, ConstructionError> {
    let n = d as usize + 1;
    // e_i * scale / sqrt(2) in R^{d+1} are pairwise `scale` apart
    let s = scale / std::f64::consts::SQRT_2;
    // Helmert rows v_m (m = 1..d): ( (1,..,1, -m, 0,..) / sqrt(m(m+1)) )
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let mut coords = Vec::with_capacity(d as usize);
        for m in 1..n {
            let norm = (m as f64 * (m as f64 + 1.0)).sqrt();
            let entry = if i < m {
                1.0 / norm
            } else if i == m {
                -(m as f64) / norm
            } else {
                0.0
            };
            coords.push(s * entry);
        }
        points.push(Point::from_f64(&coords));
    }
    Ok(PointSet::new(points, format!("regular-simplex-d{d}"), 1e-12)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{squared_distance, Scalar};

    #[test]
    fn lenz_cross_circle_distances_are_one() {
        let (ps, params) = lenz(&LenzSpec {
            d: 4,
            n: 12,
            mode: LenzMode::Rich,
            angle_seed: 0,
        })
        .unwrap();
        assert_eq!(ps.len(), 12);
        assert_eq!(params.circles.len(), 2);
        let one = Scalar::from_int(1);
        for i in 0..6 {
            for j in 6..12 {
                let d2 = squared_distance(&ps.points[i], &ps.points[j]).unwrap();
                assert!(d2.within(&one, 1e-9), "pair ({i},{j}) at {}", d2.encode());
            }
        }
    }

    #[test]
    fn lenz_rich_diameter_near_sqrt2() {
        let (ps, _) = lenz(&LenzSpec {
            d: 4,
            n: 12,
            mode: LenzMode::Rich,
            angle_seed: 0,
        })
        .unwrap();
        let mut max_d2 = 0.0f64;
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                let d2 = squared_distance(&ps.points[i], &ps.points[j])
                    .unwrap()
                    .to_f64();
                max_d2 = max_d2.max(d2);
            }
        }
        // two nearly-antipodal points on one circle: strictly above 1,
        // at most the full diameter sqrt(2)
        assert!(max_d2 > 1.5, "diameter^2 = {max_d2}");
        assert!(max_d2 <= 2.0 + 1e-9);
    }

    #[test]
    fn lenz_clique_mode_pairwise_unit() {
        let (ps, _) = lenz(&LenzSpec {
            d: 6,
            n: 6,
            mode: LenzMode::Clique,
            angle_seed: 0,
        })
        .unwrap();
        assert_eq!(ps.len(), 6);
        let one = Scalar::from_int(1);
        for i in 0..6 {
            for j in i + 1..6 {
                let d2 = squared_distance(&ps.points[i], &ps.points[j]).unwrap();
                assert!(d2.within(&one, 1e-9));
            }
        }
        assert!(lenz(&LenzSpec {
            d: 5,
            n: 4,
            mode: LenzMode::Clique,
            angle_seed: 0
        })
        .is_err());
    }

    #[test]
    fn lenz_rejects_small_inputs() {
        assert!(lenz(&LenzSpec {
            d: 3,
            n: 8,
            mode: LenzMode::Rich,
            angle_seed: 0
        })
        .is_err());
        assert!(lenz(&LenzSpec {
            d: 4,
            n: 1,
            mode: LenzMode::Rich,
            angle_seed: 0
        })
        .is_err());
    }

    #[test]
    fn pattern_path_shares_a_plane() {
        let path = SmallGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let (classes, _) = lenz_pattern(&path, &[0, 1, 0], 4, 4, 0).unwrap();
        assert_eq!(classes.len(), 3);
        let one = Scalar::from_int(1);
        // edges (1,2) and (2,3) are realized at distance exactly 1
        for (a, b) in [(0usize, 1usize), (1, 2)] {
            for p in &classes[a].points {
                for q in &classes[b].points {
                    assert!(squared_distance(p, q).unwrap().within(&one, 1e-9));
                }
            }
        }
    }

    #[test]
    fn pattern_triangle_rejected_in_r4() {
        let tri = SmallGraph::complete(3).unwrap();
        // three distinct planes need 6 dimensions
        assert!(matches!(
            lenz_pattern(&tri, &[0, 1, 2], 4, 4, 0),
            Err(ConstructionError::NotEnoughDimensions { .. })
        ));
        // reusing a plane on an edge violates orthogonality
        assert!(matches!(
            lenz_pattern(&tri, &[0, 1, 0], 4, 6, 0),
            Err(ConstructionError::OrthogonalityViolated { .. })
        ));
    }

    #[test]
    fn pattern_k2_is_plain_lenz() {
        let k2 = SmallGraph::complete(2).unwrap();
        let (classes, _) = lenz_pattern(&k2, &[0, 1], 6, 4, 0).unwrap();
        let one = Scalar::from_int(1);
        for p in &classes[0].points {
            for q in &classes[1].points {
                assert!(squared_distance(p, q).unwrap().within(&one, 1e-9));
            }
        }
    }

    #[test]
    fn regular_simplex_distances() {
        for d in 1..=6u32 {
            let ps = regular_simplex(d, 1.0).unwrap();
            assert_eq!(ps.len(), d as usize + 1);
            let one = Scalar::from_int(1);
            for i in 0..ps.len() {
                for j in i + 1..ps.len() {
                    let d2 = squared_distance(&ps.points[i], &ps.points[j]).unwrap();
                    assert!(d2.within(&one, 1e-9));
                }
            }
        }
        // scaled variant
        let ps = regular_simplex(3, 2.0).unwrap();
        let four = Scalar::from_int(4);
        for i in 0..4 {
            for j in i + 1..4 {
                let d2 = squared_distance(&ps.points[i], &ps.points[j]).unwrap();
                assert!(d2.within(&four, 1e-9));
            }
        }
    }
}
