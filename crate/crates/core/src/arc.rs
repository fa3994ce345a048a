//! Arc-shaped subsets of the circle and the projection onto them.
//!
//! An [`Arc`] is either empty, the full circle, a plain interval that does not
//! cross zero, or a wrap-around set `[0, lo) ∪ (hi, 2π)` with independent
//! closure flags. Convexity here means: any two member points are joined by a
//! minor arc (length ≤ π) lying inside the set.

use std::f64::consts::{PI, TAU};
use std::fmt;

use thiserror::Error;

use crate::angle::{reduce, Angle};

/// Errors from arc-set operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ArcError {
    /// Projection onto the empty set is undefined.
    #[error("cannot project onto an empty arc")]
    EmptyArc,
    /// Projection requires a closed set so the nearest point is attained.
    #[error("cannot project onto a non-closed arc")]
    NotClosed,
}

/// A subset of the circle that is empty, full, or a single arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Arc {
    /// The empty set.
    Empty,
    /// The whole circle.
    Full,
    /// `{φ : lo ≤ φ ≤ hi}` with closure flags; requires `lo ≤ hi` and never
    /// crosses zero.
    Interval {
        lo: Angle,
        hi: Angle,
        lo_closed: bool,
        hi_closed: bool,
    },
    /// The wrap-around set `[0, lo) ∪ (hi, 2π)` with closure flags on the two
    /// finite endpoints `lo` and `hi`; requires `lo ≤ hi`.
    Wrap {
        lo: Angle,
        hi: Angle,
        lo_closed: bool,
        hi_closed: bool,
    },
}

/// Which convexity/closedness classes an [`Arc`] belongs to.
///
/// `convex`: the set is the full circle or a minor arc (length ≤ π).
/// `strongly_convex`: a minor arc that does not contain a pair of antipodal
/// points (excludes closed arcs of length exactly π and the full circle).
/// `convex_not_strong`: convex but not strongly convex.
/// `closed_arc`: topologically closed (includes the empty set and full circle).
/// `closed_convex`: both convex and closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConvexClass {
    pub convex: bool,
    pub strongly_convex: bool,
    pub convex_not_strong: bool,
    pub closed_arc: bool,
    pub closed_convex: bool,
}

impl ConvexClass {
    /// True when the set belongs to none of the classes.
    pub fn none(&self) -> bool {
        !(self.convex
            || self.strongly_convex
            || self.convex_not_strong
            || self.closed_arc
            || self.closed_convex)
    }
}

impl Arc {
    /// The empty set.
    pub fn empty() -> Self {
        Arc::Empty
    }

    /// The whole circle.
    pub fn full() -> Self {
        Arc::Full
    }

    /// Closed interval `[lo, hi]` (not crossing zero).
    ///
    /// # Panics
    ///
    /// Panics if `lo > hi`.
    pub fn segment(lo: Angle, hi: Angle) -> Self {
        Arc::interval(lo, hi, true, true)
    }

    /// Interval from `lo` to `hi` (not crossing zero) with the given closure
    /// flags. Degenerate inputs canonicalize: `lo == hi` keeps a singleton
    /// only when both ends are closed, otherwise the set is empty.
    ///
    /// # Panics
    ///
    /// Panics if `lo > hi`.
    pub fn interval(lo: Angle, hi: Angle, lo_closed: bool, hi_closed: bool) -> Self {
        assert!(
            lo.radians() <= hi.radians(),
            "interval endpoints out of order: {} > {}",
            lo.radians(),
            hi.radians()
        );
        if lo == hi && !(lo_closed && hi_closed) {
            return Arc::Empty;
        }
        Arc::Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    /// Wrap-around set `[0, lo) ∪ (hi, 2π)` with the given closure flags on
    /// `lo` and `hi`. Degenerate inputs canonicalize: `lo == hi` with any end
    /// closed covers the whole circle; with both ends open it is the circle
    /// minus one point.
    ///
    /// # Panics
    ///
    /// Panics if `lo > hi`.
    pub fn wrap(lo: Angle, hi: Angle, lo_closed: bool, hi_closed: bool) -> Self {
        assert!(
            lo.radians() <= hi.radians(),
            "wrap endpoints out of order: {} > {}",
            lo.radians(),
            hi.radians()
        );
        if lo == hi && (lo_closed || hi_closed) {
            return Arc::Full;
        }
        Arc::Wrap {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    pub fn is_empty_set(&self) -> bool {
        matches!(self, Arc::Empty)
    }

    pub fn is_full(&self) -> bool {
        matches!(self, Arc::Full)
    }

    /// Lebesgue measure of the set in radians, in `[0, 2π]`.
    pub fn length(&self) -> f64 {
        match *self {
            Arc::Empty => 0.0,
            Arc::Full => TAU,
            Arc::Interval { lo, hi, .. } => hi.radians() - lo.radians(),
            Arc::Wrap { lo, hi, .. } => lo.radians() + TAU - hi.radians(),
        }
    }

    /// True when the set is topologically closed.
    pub fn is_closed(&self) -> bool {
        match *self {
            Arc::Empty | Arc::Full => true,
            Arc::Interval {
                lo_closed,
                hi_closed,
                ..
            }
            | Arc::Wrap {
                lo_closed,
                hi_closed,
                ..
            } => lo_closed && hi_closed,
        }
    }

    /// The two finite endpoints `(lo, hi)` when the set is a proper arc.
    pub fn bounds(&self) -> Option<(Angle, Angle)> {
        match *self {
            Arc::Interval { lo, hi, .. } | Arc::Wrap { lo, hi, .. } => Some((lo, hi)),
            _ => None,
        }
    }

    /// Counterclockwise parameterization `(start, length)` of a proper arc:
    /// the set is `{start + t mod 2π : t ∈ [0, length]}` up to endpoint
    /// closure. Intervals start at `lo`; wrap-around arcs start at `hi`.
    pub fn span(&self) -> Option<(Angle, f64)> {
        match *self {
            Arc::Interval { lo, .. } => Some((lo, self.length())),
            Arc::Wrap { hi, .. } => Some((hi, self.length())),
            _ => None,
        }
    }

    /// Set membership, honoring endpoint closure exactly.
    pub fn contains(&self, phi: Angle) -> bool {
        let p = phi.radians();
        match *self {
            Arc::Empty => false,
            Arc::Full => true,
            Arc::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => {
                let above = p > lo.radians() || (lo_closed && p == lo.radians());
                let below = p < hi.radians() || (hi_closed && p == hi.radians());
                above && below
            }
            Arc::Wrap {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => {
                p < lo.radians()
                    || (lo_closed && p == lo.radians())
                    || p > hi.radians()
                    || (hi_closed && p == hi.radians())
            }
        }
    }

    /// The set rotated counterclockwise by `delta` radians.
    pub fn rotate(&self, delta: f64) -> Arc {
        match *self {
            Arc::Empty => Arc::Empty,
            Arc::Full => Arc::Full,
            Arc::Wrap {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } if lo == hi => {
                // Circle minus one point: move the missing point.
                let p = lo.rotated(delta);
                Arc::Wrap {
                    lo: p,
                    hi: p,
                    lo_closed,
                    hi_closed,
                }
            }
            Arc::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => Self::from_span(lo.rotated(delta), hi.radians() - lo.radians(), lo_closed, hi_closed),
            Arc::Wrap {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => Self::from_span(
                hi.rotated(delta),
                lo.radians() + TAU - hi.radians(),
                hi_closed,
                lo_closed,
            ),
        }
    }

    /// Rebuild an arc from its counterclockwise span. `start_closed` and
    /// `end_closed` are the closure flags at `start` and `start + length`.
    fn from_span(start: Angle, length: f64, start_closed: bool, end_closed: bool) -> Arc {
        debug_assert!((0.0..TAU).contains(&length));
        let end = start.radians() + length;
        if end < TAU {
            Arc::interval(start, Angle::new(end), start_closed, end_closed)
        } else if end == TAU {
            // The far endpoint sits exactly on zero.
            Arc::wrap(Angle::ZERO, start, end_closed, start_closed)
        } else {
            Arc::wrap(Angle::new(end - TAU), start, end_closed, start_closed)
        }
    }

    /// Classify the set by convexity and closedness. Length comparisons are
    /// exact floating-point comparisons; boundary cases (length exactly π)
    /// resolve accordingly.
    pub fn classify(&self) -> ConvexClass {
        let minor = match *self {
            Arc::Empty => true,
            Arc::Full => false,
            _ => self.length() <= PI,
        };
        let convex = self.is_full() || minor;
        let strongly_convex = minor && !(self.is_closed() && self.length() == PI);
        let convex_not_strong = convex && !strongly_convex;
        let closed_arc = self.is_closed();
        let closed_convex = convex && closed_arc;
        ConvexClass {
            convex,
            strongly_convex,
            convex_not_strong,
            closed_arc,
            closed_convex,
        }
    }

    /// Smallest closed convex superset: the closed version of a minor arc, or
    /// the full circle once the set spans more than a semicircle.
    pub fn convex_closure(&self) -> Arc {
        match *self {
            Arc::Empty => Arc::Empty,
            Arc::Full => Arc::Full,
            Arc::Interval { lo, hi, .. } => {
                if self.length() <= PI {
                    Arc::segment(lo, hi)
                } else {
                    Arc::Full
                }
            }
            Arc::Wrap { lo, hi, .. } => {
                if self.length() <= PI {
                    Arc::wrap(lo, hi, true, true)
                } else {
                    Arc::Full
                }
            }
        }
    }

    /// Nearest point of the arc under the chordal metric `1 - cos`.
    ///
    /// Interior points map to themselves; exterior points map to the endpoint
    /// on their side of the complementary arc's midpoint. A point exactly at
    /// that midpoint (equidistant tie) maps to the arc's `lo` endpoint.
    ///
    /// # Errors
    ///
    /// [`ArcError::EmptyArc`] for the empty set, [`ArcError::NotClosed`] when
    /// either endpoint is open (the infimum need not be attained).
    pub fn project(&self, phi: Angle) -> Result<Angle, ArcError> {
        match *self {
            Arc::Empty => Err(ArcError::EmptyArc),
            Arc::Full => Ok(phi),
            _ if !self.is_closed() => Err(ArcError::NotClosed),
            Arc::Interval { lo, hi, .. } => {
                if self.contains(phi) {
                    return Ok(phi);
                }
                // Walk counterclockwise from hi through the complement; the
                // midpoint of the complement is the equidistant tie.
                let u = reduce(phi.radians() - hi.radians());
                let half = PI - self.length() / 2.0;
                if u < half {
                    Ok(hi)
                } else {
                    Ok(lo)
                }
            }
            Arc::Wrap { lo, hi, .. } => {
                if self.contains(phi) {
                    return Ok(phi);
                }
                // The complement is the plain interval (lo, hi).
                let mid = (lo.radians() + hi.radians()) / 2.0;
                if phi.radians() <= mid {
                    Ok(lo)
                } else {
                    Ok(hi)
                }
            }
        }
    }
}

/// The closed minor arc joining `a` and `b`: the shorter of the two arcs
/// between them, with the plain-interval form chosen on an exact half-circle
/// tie.
pub fn minor_arc(a: Angle, b: Angle) -> Arc {
    let (lo, hi) = if a.radians() <= b.radians() { (a, b) } else { (b, a) };
    if hi.radians() - lo.radians() <= PI {
        Arc::segment(lo, hi)
    } else {
        Arc::wrap(lo, hi, true, true)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Arc::Empty => write!(f, "empty"),
            Arc::Full => write!(f, "full"),
            Arc::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => write!(
                f,
                "{}{:.6}, {:.6}{}",
                if lo_closed { '[' } else { '(' },
                lo.radians(),
                hi.radians(),
                if hi_closed { ']' } else { ')' },
            ),
            Arc::Wrap {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => {
                // Display-only simplification when the `[0, lo)` part is empty.
                if lo.radians() == 0.0 && !lo_closed {
                    write!(
                        f,
                        "{}{:.6}, 6.283185{}",
                        if hi_closed { '[' } else { '(' },
                        hi.radians(),
                        ')'
                    )
                } else {
                    write!(
                        f,
                        "[0, {:.6}{} ∪ {}{:.6}, 6.283185)",
                        lo.radians(),
                        if lo_closed { ']' } else { ')' },
                        if hi_closed { '[' } else { '(' },
                        hi.radians(),
                    )
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ang(x: f64) -> Angle {
        Angle::new(x)
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn degenerate_constructors_canonicalize() {
        assert_eq!(Arc::interval(ang(1.0), ang(1.0), true, false), Arc::Empty);
        assert_eq!(Arc::interval(ang(1.0), ang(1.0), false, false), Arc::Empty);
        // Singleton survives only fully closed.
        let point = Arc::interval(ang(1.0), ang(1.0), true, true);
        assert!(point.contains(ang(1.0)));
        assert_eq!(point.length(), 0.0);
        assert_eq!(Arc::wrap(ang(1.0), ang(1.0), true, false), Arc::Full);
        // Both ends open: circle minus a point.
        let punctured = Arc::wrap(ang(1.0), ang(1.0), false, false);
        assert!(!punctured.contains(ang(1.0)));
        assert!(punctured.contains(ang(1.0 + 1e-9)));
        assert_eq!(punctured.length(), TAU);
    }

    #[test]
    fn membership_honors_closure() {
        let a = Arc::interval(ang(0.5), ang(1.5), true, false);
        assert!(a.contains(ang(0.5)));
        assert!(a.contains(ang(1.0)));
        assert!(!a.contains(ang(1.5)));
        assert!(!a.contains(ang(0.4)));

        let w = Arc::wrap(ang(0.5), ang(4.0), false, true);
        assert!(w.contains(ang(0.0)));
        assert!(w.contains(ang(0.4)));
        assert!(!w.contains(ang(0.5)));
        assert!(w.contains(ang(4.0)));
        assert!(w.contains(ang(5.0)));
        assert!(!w.contains(ang(2.0)));
    }

    #[test]
    fn minor_arc_short_side() {
        let a = minor_arc(ang(0.0), ang(PI / 2.0));
        assert_eq!(a, Arc::segment(ang(0.0), ang(PI / 2.0)));
        close(a.length(), PI / 2.0, 1e-15);
    }

    #[test]
    fn minor_arc_half_circle_tie_keeps_interval_form() {
        let a = minor_arc(ang(0.0), ang(PI));
        assert_eq!(a, Arc::segment(ang(0.0), ang(PI)));
        close(a.length(), PI, 1e-15);
    }

    #[test]
    fn minor_arc_wraps_through_zero() {
        let a = minor_arc(ang(0.0), ang(3.0 * PI / 2.0));
        close(a.length(), PI / 2.0, 1e-15);
        assert!(a.contains(ang(0.0)));
        assert!(a.contains(ang(3.0 * PI / 2.0)));
        assert!(a.contains(ang(6.0)));
        assert!(!a.contains(ang(PI / 2.0)));
        assert!(!a.contains(ang(PI)));
        // Arguments commute.
        assert_eq!(a, minor_arc(ang(3.0 * PI / 2.0), ang(0.0)));
    }

    #[test]
    fn classify_quarter_circle() {
        let c = Arc::segment(ang(0.0), ang(PI / 2.0)).classify();
        assert!(c.convex && c.strongly_convex && c.closed_arc && c.closed_convex);
        assert!(!c.convex_not_strong);
    }

    #[test]
    fn classify_closed_half_circle_is_not_strongly_convex() {
        // Contains the antipodal pair {0, π}.
        let c = Arc::segment(ang(0.0), ang(PI)).classify();
        assert!(c.convex && !c.strongly_convex && c.convex_not_strong);
        assert!(c.closed_arc && c.closed_convex);
    }

    #[test]
    fn classify_half_open_half_circle_is_strongly_convex() {
        let c = Arc::interval(ang(0.0), ang(PI), true, false).classify();
        assert!(c.convex && c.strongly_convex && !c.convex_not_strong);
        assert!(!c.closed_arc && !c.closed_convex);
    }

    #[test]
    fn classify_full_circle_per_set_builders() {
        // Convex and closed, but not strongly convex.
        let c = Arc::Full.classify();
        assert!(c.convex && !c.strongly_convex && c.convex_not_strong);
        assert!(c.closed_arc && c.closed_convex);
    }

    #[test]
    fn classify_empty_set() {
        let c = Arc::Empty.classify();
        assert!(c.convex && c.strongly_convex && c.closed_arc && c.closed_convex);
        assert!(!c.convex_not_strong);
        assert!(!c.none());
    }

    #[test]
    fn classify_long_open_arc_is_only_unclassified() {
        let c = Arc::interval(ang(0.0), ang(4.0), false, false).classify();
        assert!(c.none());
    }

    #[test]
    fn convex_closure_cases() {
        // Open short arc closes up.
        assert_eq!(
            Arc::interval(ang(0.0), ang(3.0 * PI / 4.0), false, false).convex_closure(),
            Arc::segment(ang(0.0), ang(3.0 * PI / 4.0))
        );
        // Longer than a semicircle: everything.
        assert_eq!(Arc::segment(ang(0.0), ang(5.0)).convex_closure(), Arc::Full);
        assert_eq!(Arc::Empty.convex_closure(), Arc::Empty);
        assert_eq!(Arc::Full.convex_closure(), Arc::Full);
        // Wrap-around minor arc closes in place.
        let w = Arc::wrap(ang(0.5), ang(5.5), false, false);
        assert_eq!(w.convex_closure(), Arc::wrap(ang(0.5), ang(5.5), true, true));
    }

    #[test]
    fn project_interval_cases() {
        let a = Arc::segment(ang(0.0), ang(PI / 2.0));
        // Interior is fixed.
        close(a.project(ang(1.0)).unwrap().radians(), 1.0, 0.0);
        close(a.project(ang(0.0)).unwrap().radians(), 0.0, 0.0);
        // Just past hi: nearest endpoint is hi.
        close(a.project(ang(3.0 * PI / 4.0)).unwrap().radians(), PI / 2.0, 1e-15);
        // Exactly at the equidistant tie (midpoint of the complement): lo.
        close(a.project(ang(5.0 * PI / 4.0)).unwrap().radians(), 0.0, 1e-15);
        // Past the tie: lo.
        close(a.project(ang(3.0 * PI / 2.0)).unwrap().radians(), 0.0, 1e-15);
    }

    #[test]
    fn project_wrap_cases() {
        let a = Arc::wrap(ang(PI / 4.0), ang(3.0 * PI / 2.0), true, true);
        // Members are fixed.
        close(a.project(ang(0.0)).unwrap().radians(), 0.0, 0.0);
        close(a.project(ang(5.0)).unwrap().radians(), 5.0, 0.0);
        // Complement is (π/4, 3π/2); its midpoint is 7π/8.
        close(a.project(ang(PI / 2.0)).unwrap().radians(), PI / 4.0, 1e-15);
        close(a.project(ang(7.0 * PI / 8.0)).unwrap().radians(), PI / 4.0, 1e-15);
        close(a.project(ang(PI)).unwrap().radians(), 3.0 * PI / 2.0, 1e-15);
    }

    #[test]
    fn project_requires_closed_nonempty() {
        assert_eq!(Arc::Empty.project(ang(1.0)), Err(ArcError::EmptyArc));
        assert_eq!(
            Arc::interval(ang(0.0), ang(1.0), true, false).project(ang(2.0)),
            Err(ArcError::NotClosed)
        );
        // The full circle projects trivially.
        close(Arc::Full.project(ang(2.0)).unwrap().radians(), 2.0, 0.0);
    }

    #[test]
    fn project_singleton() {
        let p = Arc::segment(ang(2.0), ang(2.0));
        close(p.project(ang(5.9)).unwrap().radians(), 2.0, 0.0);
        close(p.project(ang(2.0 + PI)).unwrap().radians(), 2.0, 0.0);
    }

    #[test]
    fn rotate_round_trips_and_wraps() {
        let a = Arc::interval(ang(5.0), ang(6.0), true, false);
        let r = a.rotate(1.5);
        // 5+1.5 and 6+1.5 wrap past 2π.
        assert!(r.contains(ang(reduce(5.2 + 1.5))));
        assert!(!r.contains(ang(reduce(6.0 + 1.5))));
        assert!(r.contains(ang(reduce(5.0 + 1.5))));
        assert_eq!(r.rotate(-1.5), a);
        close(r.length(), a.length(), 1e-12);

        // Wrap-around arcs rotate back into plain intervals.
        let w = Arc::wrap(ang(0.5), ang(5.5), true, true);
        let back = w.rotate(1.0);
        close(back.length(), w.length(), 1e-12);
        assert!(back.contains(ang(reduce(5.8 + 1.0))));
        assert!(back.contains(ang(reduce(0.2 + 1.0))));
        assert!(!back.contains(ang(reduce(3.0 + 1.0))));
    }

    #[test]
    fn rotate_endpoint_exactly_to_zero() {
        // [3π/2, 2π) after rotating [1, 1+π/2] by 2π − 1 − π/2 ... simpler:
        // rotate [1, 2] so that 2 lands exactly on 0.
        let a = Arc::segment(ang(1.0), ang(2.0));
        let r = a.rotate(TAU - 2.0);
        assert!(r.contains(ang(0.0)));
        assert!(r.contains(ang(TAU - 1.0)));
        assert!(r.contains(ang(TAU - 0.5)));
        assert!(!r.contains(ang(1.0)));
        close(r.length(), 1.0, 1e-12);
        assert_eq!(r.rotate(2.0 - TAU), a);
    }

    #[test]
    fn display_forms() {
        assert_eq!(format!("{}", Arc::Full), "full");
        assert_eq!(format!("{}", Arc::Empty), "empty");
        let s = format!("{}", Arc::interval(ang(0.25), ang(1.5), true, false));
        assert!(s.starts_with('[') && s.ends_with(')'), "{s}");
        // Wrap with an empty [0, lo) part displays as a plain interval up to 2π.
        let t = format!("{}", Arc::wrap(ang(0.0), ang(4.0), false, true));
        assert!(t.starts_with('['), "{t}");
    }
}
