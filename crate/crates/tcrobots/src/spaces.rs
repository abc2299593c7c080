//! Coordinate models and metric geometry of the three robot tracks.
//!
//! Every track edge has length 1. The interval runs from its free end (`t = 0`)
//! to the junction (`t = 1`); the circle has circumference 1 with the junction
//! at `t = 0` and counterclockwise as the direction of increasing `t`; the
//! lollipop glues the two at the junction, whose canonical representation is
//! `C:0`. Coordinates are unitless fractions of edge length and all tolerances
//! are absolute in these units.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Separation defining (generalized) antipodal pairs: half the circle circumference.
pub const HALF_UNIT: f64 = 0.5;

/// The track a query lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Interval,
    Circle,
    Lollipop,
}

impl SpaceKind {
    pub fn total_length(self) -> f64 {
        match self {
            SpaceKind::Interval | SpaceKind::Circle => 1.0,
            SpaceKind::Lollipop => 2.0,
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceKind::Interval => "interval",
            SpaceKind::Circle => "circle",
            SpaceKind::Lollipop => "lollipop",
        };
        f.write_str(s)
    }
}

impl FromStr for SpaceKind {
    type Err = SpaceError;
    fn from_str(s: &str) -> Result<Self, SpaceError> {
        match s {
            "interval" => Ok(SpaceKind::Interval),
            "circle" => Ok(SpaceKind::Circle),
            "lollipop" => Ok(SpaceKind::Lollipop),
            other => Err(SpaceError::IllegalCoordinate(format!(
                "unknown space {other:?} (expected interval|circle|lollipop)"
            ))),
        }
    }
}

/// Which edge of the track a coordinate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Interval,
    Circle,
}

/// A position on a track edge, encoded as `I:<t>` or `C:<t>`.
///
/// Parsing accepts anything `f64` does (up to 15 significant decimal digits
/// survive a round-trip); display uses the shortest exact representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysPoint {
    pub edge: EdgeKind,
    pub t: f64,
}

impl PhysPoint {
    pub fn interval(t: f64) -> Self {
        PhysPoint { edge: EdgeKind::Interval, t }
    }

    pub fn circle(t: f64) -> Self {
        PhysPoint { edge: EdgeKind::Circle, t }
    }

    /// True for the canonical junction representative `C:0` (lollipop only).
    pub fn is_junction(self) -> bool {
        self.edge == EdgeKind::Circle && self.t == 0.0
    }
}

impl fmt::Display for PhysPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.edge {
            EdgeKind::Interval => write!(f, "I:{}", self.t),
            EdgeKind::Circle => write!(f, "C:{}", self.t),
        }
    }
}

impl FromStr for PhysPoint {
    type Err = SpaceError;
    fn from_str(s: &str) -> Result<Self, SpaceError> {
        let bad = || SpaceError::IllegalCoordinate(format!("cannot parse point {s:?} (expected I:<t> or C:<t>)"));
        let (tag, rest) = s.split_once(':').ok_or_else(bad)?;
        let t: f64 = rest.trim().parse().map_err(|_| bad())?;
        match tag.trim() {
            "I" => Ok(PhysPoint::interval(t)),
            "C" => Ok(PhysPoint::circle(t)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for PhysPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PhysPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("IllegalCoordinate: {0}")]
    IllegalCoordinate(String),
    #[error("IllegalMove: {0}")]
    IllegalMove(String),
    #[error("DegenerateQuery: {0}")]
    DegenerateQuery(String),
    #[error("CollidingState: both robots at {0}")]
    CollidingState(PhysPoint),
}

/// A direction of travel at a point. `Parked` means no legal motion (dead end).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    IntervalUp,
    IntervalDown,
    CircleCw,
    CircleCcw,
    Parked,
}

/// Away-direction query result. At the junction two distinct directions
/// increase the distance, so the answer there is `Ambiguous`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Away {
    Dir(Direction),
    Ambiguous,
}

/// Wrap a circle coordinate into `[0, 1)`.
pub(crate) fn wrap_unit(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    if r == 1.0 {
        0.0
    } else {
        r
    }
}

/// Cyclic distance between two circle coordinates.
pub(crate) fn circle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(1.0 - d)
}

/// Signed counterclockwise displacement taking `from` to `to`, in `(-1/2, 1/2]`.
/// Exact antipodes resolve to `+1/2` (counterclockwise).
pub(crate) fn cyc_signed(from: f64, to: f64) -> f64 {
    let d = (to - from).rem_euclid(1.0);
    if d > 0.5 {
        d - 1.0
    } else {
        d
    }
}

impl SpaceKind {
    /// Normalize a point to its canonical form, rejecting coordinates that are
    /// illegal for this track. Idempotent. The lollipop junction is always
    /// represented as `C:0`; `I:1` aliases to it.
    pub fn canonicalize(self, p: PhysPoint) -> Result<PhysPoint, SpaceError> {
        if !p.t.is_finite() {
            return Err(SpaceError::IllegalCoordinate(format!("non-finite coordinate {}", p.t)));
        }
        if !(0.0..=1.0).contains(&p.t) {
            return Err(SpaceError::IllegalCoordinate(format!("{p} outside [0, 1]")));
        }
        match (self, p.edge) {
            (SpaceKind::Interval, EdgeKind::Interval) => Ok(p),
            (SpaceKind::Circle, EdgeKind::Circle) => Ok(PhysPoint::circle(wrap_unit(p.t))),
            (SpaceKind::Lollipop, EdgeKind::Interval) => {
                if p.t == 1.0 {
                    Ok(PhysPoint::circle(0.0))
                } else {
                    Ok(p)
                }
            }
            (SpaceKind::Lollipop, EdgeKind::Circle) => Ok(PhysPoint::circle(wrap_unit(p.t))),
            _ => Err(SpaceError::IllegalCoordinate(format!("{p} has an edge tag illegal on the {self}"))),
        }
    }

    /// Length of the shortest path in the track between two canonical points.
    pub fn dist(self, p: PhysPoint, q: PhysPoint) -> f64 {
        match (p.edge, q.edge) {
            (EdgeKind::Interval, EdgeKind::Interval) => (p.t - q.t).abs(),
            (EdgeKind::Circle, EdgeKind::Circle) => circle_gap(p.t, q.t),
            (EdgeKind::Interval, EdgeKind::Circle) => (1.0 - p.t) + q.t.min(1.0 - q.t),
            (EdgeKind::Circle, EdgeKind::Interval) => (1.0 - q.t) + p.t.min(1.0 - p.t),
        }
    }

    /// True when the two positions are exactly half a unit apart (within `tol`).
    pub fn is_generalized_antipodal(self, p: PhysPoint, q: PhysPoint, tol: f64) -> bool {
        (self.dist(p, q) - HALF_UNIT).abs() <= tol
    }

    /// Distance from a canonical point to the lollipop junction `C:0`.
    pub(crate) fn dist_to_junction(self, p: PhysPoint) -> f64 {
        match p.edge {
            EdgeKind::Interval => 1.0 - p.t,
            EdgeKind::Circle => p.t.min(1.0 - p.t),
        }
    }

    /// The unique direction at `subject` that increases the distance to `other`
    /// to first order. Requires `0 < dist < 1/2` (the unique-geodesic regime).
    /// Returns `Ambiguous` at the junction and `Parked` at the free end.
    pub fn away_direction(self, subject: PhysPoint, other: PhysPoint) -> Result<Away, SpaceError> {
        let d = self.dist(subject, other);
        if d == 0.0 {
            return Err(SpaceError::DegenerateQuery("away direction undefined for colliding robots".into()));
        }
        if d >= HALF_UNIT {
            return Err(SpaceError::DegenerateQuery(format!(
                "away direction requires separation < {HALF_UNIT}, got {d}"
            )));
        }
        let dir = match subject.edge {
            EdgeKind::Interval => {
                if subject.t == 0.0 {
                    // Free end: the increasing direction points outward.
                    Direction::Parked
                } else if other.edge == EdgeKind::Interval && other.t < subject.t {
                    if self == SpaceKind::Interval && subject.t == 1.0 {
                        Direction::Parked
                    } else {
                        Direction::IntervalUp
                    }
                } else {
                    Direction::IntervalDown
                }
            }
            EdgeKind::Circle => {
                if self == SpaceKind::Lollipop && subject.t == 0.0 {
                    // Both circle directions increase the distance at the junction.
                    return Ok(Away::Ambiguous);
                }
                match other.edge {
                    EdgeKind::Circle => {
                        let gap_ccw = (other.t - subject.t).rem_euclid(1.0);
                        if gap_ccw < 0.5 {
                            Direction::CircleCw
                        } else {
                            Direction::CircleCcw
                        }
                    }
                    // Other robot on the interval: move toward the pole.
                    EdgeKind::Interval => {
                        if subject.t < 0.5 {
                            Direction::CircleCcw
                        } else {
                            Direction::CircleCw
                        }
                    }
                }
            }
        };
        Ok(Away::Dir(dir))
    }

    /// Point at arc length `arclen` from `p` in direction `dir`. Circle motion
    /// wraps; interval motion past either end is illegal, and moving up through
    /// the junction requires an explicit direction change by the caller.
    pub fn move_along(self, p: PhysPoint, dir: Direction, arclen: f64) -> Result<PhysPoint, SpaceError> {
        if !(arclen >= 0.0) || !arclen.is_finite() {
            return Err(SpaceError::IllegalMove(format!("arc length must be finite and >= 0, got {arclen}")));
        }
        if dir == Direction::Parked || arclen == 0.0 {
            return Ok(p);
        }
        match (p.edge, dir) {
            (EdgeKind::Interval, Direction::IntervalDown) => {
                let t = p.t - arclen;
                if t < 0.0 {
                    Err(SpaceError::IllegalMove(format!("{p} moved {arclen} past the free end")))
                } else {
                    Ok(PhysPoint::interval(t))
                }
            }
            (EdgeKind::Interval, Direction::IntervalUp) => {
                let t = p.t + arclen;
                if t > 1.0 {
                    Err(SpaceError::IllegalMove(format!(
                        "{p} moved {arclen} past the top of the interval; change direction at the junction"
                    )))
                } else {
                    self.canonicalize(PhysPoint::interval(t))
                }
            }
            (EdgeKind::Circle, Direction::CircleCcw) if self != SpaceKind::Interval => {
                Ok(PhysPoint::circle(wrap_unit(p.t + arclen)))
            }
            (EdgeKind::Circle, Direction::CircleCw) if self != SpaceKind::Interval => {
                Ok(PhysPoint::circle(wrap_unit(p.t - arclen)))
            }
            (EdgeKind::Circle, Direction::IntervalDown) if self == SpaceKind::Lollipop && p.t == 0.0 => {
                // Crossing the junction downward continues into the interval edge.
                let t = 1.0 - arclen;
                if t < 0.0 {
                    Err(SpaceError::IllegalMove(format!("junction moved {arclen} past the free end")))
                } else {
                    Ok(PhysPoint::interval(t))
                }
            }
            _ => Err(SpaceError::IllegalMove(format!("direction {dir:?} is illegal at {p} on the {self}"))),
        }
    }

    /// Position a fraction `lambda` of the way along the shortest track path
    /// from `p` to `q`. Exactly antipodal circle pairs interpolate
    /// counterclockwise; pole-to-interval ties also resolve counterclockwise.
    pub fn interp(self, p: PhysPoint, q: PhysPoint, lambda: f64) -> PhysPoint {
        if lambda <= 0.0 {
            return p;
        }
        if lambda >= 1.0 {
            return q;
        }
        match (p.edge, q.edge) {
            (EdgeKind::Interval, EdgeKind::Interval) => PhysPoint::interval(p.t + lambda * (q.t - p.t)),
            (EdgeKind::Circle, EdgeKind::Circle) => {
                let d = cyc_signed(p.t, q.t);
                PhysPoint::circle(wrap_unit(p.t + lambda * d))
            }
            (EdgeKind::Interval, EdgeKind::Circle) => {
                let total = self.dist(p, q);
                let walk = lambda * total;
                let to_junction = 1.0 - p.t;
                if walk <= to_junction {
                    PhysPoint::interval(p.t + walk)
                } else {
                    let rem = walk - to_junction;
                    if q.t <= 0.5 {
                        PhysPoint::circle(wrap_unit(rem))
                    } else {
                        PhysPoint::circle(wrap_unit(1.0 - rem))
                    }
                }
            }
            (EdgeKind::Circle, EdgeKind::Interval) => {
                let total = self.dist(p, q);
                let walk = lambda * total;
                let to_junction = p.t.min(1.0 - p.t);
                if walk < to_junction {
                    if p.t < 0.5 {
                        PhysPoint::circle(p.t - walk)
                    } else {
                        PhysPoint::circle(wrap_unit(p.t + walk))
                    }
                } else {
                    PhysPoint::interval(1.0 - (walk - to_junction))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: fn(f64) -> PhysPoint = PhysPoint::interval;
    const C: fn(f64) -> PhysPoint = PhysPoint::circle;

    #[test]
    fn canonicalize_junction_aliasing() {
        let l = SpaceKind::Lollipop;
        assert_eq!(l.canonicalize(I(1.0)).unwrap(), C(0.0));
        assert_eq!(l.canonicalize(C(0.3)).unwrap(), C(0.3));
        assert_eq!(l.canonicalize(C(1.0)).unwrap(), C(0.0));
        // Idempotent.
        let p = l.canonicalize(I(1.0)).unwrap();
        assert_eq!(l.canonicalize(p).unwrap(), p);
    }

    #[test]
    fn canonicalize_rejects_illegal() {
        assert!(matches!(
            SpaceKind::Circle.canonicalize(I(0.5)),
            Err(SpaceError::IllegalCoordinate(_))
        ));
        assert!(matches!(
            SpaceKind::Interval.canonicalize(C(0.5)),
            Err(SpaceError::IllegalCoordinate(_))
        ));
        assert!(SpaceKind::Lollipop.canonicalize(I(1.2)).is_err());
        assert!(SpaceKind::Lollipop.canonicalize(I(-0.1)).is_err());
        assert!(SpaceKind::Lollipop.canonicalize(I(f64::NAN)).is_err());
    }

    #[test]
    fn dist_examples() {
        let l = SpaceKind::Lollipop;
        assert_eq!(l.dist(C(0.0), C(0.5)), 0.5);
        assert_eq!(l.dist(I(0.25), I(0.75)), 0.5);
        assert_eq!(l.dist(I(0.5), C(0.75)), 0.75);
        assert_eq!(l.dist(C(0.75), I(0.5)), 0.75);
        assert!((SpaceKind::Circle.dist(C(0.9), C(0.1)) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn antipodal_examples() {
        let tol = 1e-9;
        assert!(SpaceKind::Circle.is_generalized_antipodal(C(0.0), C(0.5), tol));
        assert!(SpaceKind::Lollipop.is_generalized_antipodal(I(0.75), C(0.25), tol));
        assert!(!SpaceKind::Lollipop.is_generalized_antipodal(I(0.2), I(0.3), tol));
    }

    #[test]
    fn away_direction_examples() {
        let l = SpaceKind::Lollipop;
        assert_eq!(
            l.away_direction(I(0.8), I(0.95)).unwrap(),
            Away::Dir(Direction::IntervalDown)
        );
        assert_eq!(l.away_direction(C(0.0), I(0.7)).unwrap(), Away::Ambiguous);
        assert_eq!(
            l.away_direction(C(0.3), I(0.8)).unwrap(),
            Away::Dir(Direction::CircleCcw)
        );
        // Lower robot moves up, away from one below it.
        assert_eq!(
            l.away_direction(I(0.3), I(0.2)).unwrap(),
            Away::Dir(Direction::IntervalUp)
        );
        // Free end parks.
        assert_eq!(l.away_direction(I(0.0), I(0.3)).unwrap(), Away::Dir(Direction::Parked));
    }

    #[test]
    fn away_direction_degenerate() {
        let l = SpaceKind::Lollipop;
        assert!(matches!(
            l.away_direction(I(0.2), I(0.2)),
            Err(SpaceError::DegenerateQuery(_))
        ));
        assert!(matches!(
            l.away_direction(I(0.2), I(0.9)),
            Err(SpaceError::DegenerateQuery(_))
        ));
    }

    #[test]
    fn move_along_examples() {
        let l = SpaceKind::Lollipop;
        let wrapped = l.move_along(C(0.9), Direction::CircleCcw, 0.2).unwrap();
        assert_eq!(wrapped.edge, EdgeKind::Circle);
        assert!((wrapped.t - 0.1).abs() < 1e-12);
        assert_eq!(l.move_along(I(0.3), Direction::IntervalDown, 0.3).unwrap(), I(0.0));
        assert!(matches!(
            SpaceKind::Interval.move_along(I(0.9), Direction::IntervalUp, 0.2),
            Err(SpaceError::IllegalMove(_))
        ));
        // Reaching the junction exactly canonicalizes.
        assert_eq!(l.move_along(I(0.8), Direction::IntervalUp, 0.2).unwrap(), C(0.0));
        // Crossing the junction downward continues into the interval.
        assert_eq!(l.move_along(C(0.0), Direction::IntervalDown, 0.25).unwrap(), I(0.75));
        assert!(l.move_along(I(0.3), Direction::IntervalDown, 0.4).is_err());
        assert!(l.move_along(I(0.3), Direction::CircleCw, 0.1).is_err());
        assert_eq!(l.move_along(I(0.3), Direction::Parked, 5.0).unwrap(), I(0.3));
    }

    #[test]
    fn interp_follows_track() {
        let l = SpaceKind::Lollipop;
        // Wraparound arc.
        let mid = SpaceKind::Circle.interp(C(0.9), C(0.1), 0.5);
        assert!((mid.t - 0.0).abs() < 1e-12);
        // Junction crossing: I:0.8 -> C:0.1 passes through the junction at walk 0.2.
        let p = l.interp(I(0.8), C(0.1), 0.5);
        assert_eq!(p.edge, EdgeKind::Interval);
        assert!((p.t - 0.95).abs() < 1e-12);
        let p = l.interp(I(0.8), C(0.1), 0.9);
        assert_eq!(p.edge, EdgeKind::Circle);
        assert!((p.t - 0.07).abs() < 1e-12);
        // Reverse direction.
        let p = l.interp(C(0.9), I(0.8), 0.5);
        assert_eq!(p.edge, EdgeKind::Interval);
        assert!((p.t - 0.95).abs() < 1e-12);
    }

    #[test]
    fn point_encoding_round_trip() {
        for s in ["I:0.25", "C:0.5", "I:0", "C:0.123456789012345"] {
            let p: PhysPoint = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("Q:0.3".parse::<PhysPoint>().is_err());
        assert!("I:abc".parse::<PhysPoint>().is_err());
        assert!("0.3".parse::<PhysPoint>().is_err());
    }
}
