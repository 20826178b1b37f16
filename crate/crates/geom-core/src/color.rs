use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

use crate::point::{quad_at_common_scale, DyadicPoint, LatticePoint};
use crate::predicates::{classify_quad, QuadClass};

/// Exact rational slope value.
pub type Slope = Ratio<i64>;

/// Edge color under a slope-interval rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flipped(self) -> Self {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// An endpoint of the blue-slope interval: a rational or ±∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlopeBound {
    NegInf,
    Finite(Slope),
    PosInf,
}

impl fmt::Display for SlopeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeBound::NegInf => f.write_str("-inf"),
            SlopeBound::PosInf => f.write_str("inf"),
            SlopeBound::Finite(r) => {
                if r.denom() == &1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Error produced when building or parsing a [`ColorRule`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule needs a blue=<interval> part, e.g. \"blue=[-inf,0]\"")]
    MissingBlue,
    #[error("unrecognized rule fragment {0:?} (expected blue=... or vertical=...)")]
    UnknownFragment(String),
    #[error("interval {0:?} must be bracketed, e.g. [-inf,0] or (-1,1)")]
    BadBrackets(String),
    #[error("interval {0:?} needs exactly one comma between two slope bounds")]
    BadShape(String),
    #[error("invalid slope bound {0:?}: {1}")]
    BadScalar(String, String),
    #[error("interval endpoints out of order: {0} > {1}")]
    OutOfOrder(SlopeBound, SlopeBound),
    #[error("vertical color {0:?} (expected blue or red)")]
    BadVertical(String),
}

/// A 2-coloring of segments by slope: a segment is BLUE iff its slope lies in
/// the (possibly half-open, possibly unbounded) rational interval `[lo, hi]`,
/// or it is vertical and `vertical_color` is blue; otherwise it is RED.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorRule {
    lo: SlopeBound,
    hi: SlopeBound,
    lo_open: bool,
    hi_open: bool,
    vertical_color: Color,
}

impl ColorRule {
    /// Builds a rule, validating `lo ≤ hi`.
    pub fn new(
        lo: SlopeBound,
        lo_open: bool,
        hi: SlopeBound,
        hi_open: bool,
        vertical_color: Color,
    ) -> Result<Self, RuleError> {
        if lo > hi {
            return Err(RuleError::OutOfOrder(lo, hi));
        }
        Ok(Self { lo, hi, lo_open, hi_open, vertical_color })
    }

    /// The baseline rule: blue iff the slope is in `[-inf, 0]`, with
    /// horizontal and vertical segments blue; red iff strictly positive.
    pub fn chi_slope() -> Self {
        Self {
            lo: SlopeBound::NegInf,
            hi: SlopeBound::Finite(Slope::from_integer(0)),
            lo_open: false,
            hi_open: false,
            vertical_color: Color::Blue,
        }
    }

    pub fn lo(&self) -> SlopeBound {
        self.lo
    }

    pub fn hi(&self) -> SlopeBound {
        self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn vertical_color(&self) -> Color {
        self.vertical_color
    }

    /// Color of the exact slope `dy/dx`, `dx ≠ 0`.
    fn finite_slope_color(&self, dy: i64, dx: i64) -> Color {
        debug_assert!(dx != 0);
        // Normalize the denominator positive so cross-multiplied comparisons
        // keep their direction.
        let (dy, dx) = if dx < 0 { (-dy, -dx) } else { (dy, dx) };
        let above_lo = match cmp_slope_to_bound(dy, dx, self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Less => false,
        };
        if !above_lo {
            return Color::Red;
        }
        let below_hi = match cmp_slope_to_bound(dy, dx, self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        };
        if below_hi {
            Color::Blue
        } else {
            Color::Red
        }
    }
}

impl Default for ColorRule {
    fn default() -> Self {
        Self::chi_slope()
    }
}

/// Compares the slope `dy/dx` (with `dx > 0`) to a bound without division:
/// `dy/dx ⋛ n/d ⟺ dy·d ⋛ n·dx` since `dx, d > 0`.
fn cmp_slope_to_bound(dy: i64, dx: i64, bound: SlopeBound) -> Ordering {
    debug_assert!(dx > 0);
    match bound {
        SlopeBound::NegInf => Ordering::Greater,
        SlopeBound::PosInf => Ordering::Less,
        SlopeBound::Finite(r) => {
            // Ratio keeps its denominator positive.
            let lhs = i128::from(dy) * i128::from(*r.denom());
            let rhs = i128::from(*r.numer()) * i128::from(dx);
            lhs.cmp(&rhs)
        }
    }
}

/// Color of the segment `pq` under `rule`, decided exactly. Panics if `p == q`
/// (a zero-length segment has no slope).
pub fn slope_color(p: LatticePoint, q: LatticePoint, rule: &ColorRule) -> Color {
    assert!(p != q, "slope_color: coincident endpoints {p}");
    if p.x == q.x {
        rule.vertical_color()
    } else {
        rule.finite_slope_color(q.y - p.y, q.x - p.x)
    }
}

/// True iff the quadruple is in strictly convex position and its two crossing
/// diagonals receive the same color under `rule`.
pub fn is_mono_crossing_quad(s: &[LatticePoint; 4], rule: &ColorRule) -> bool {
    match classify_quad(s) {
        QuadClass::Convex { diagonals: [(a, b), (c, d)] } => {
            slope_color(s[a], s[b], rule) == slope_color(s[c], s[d], rule)
        }
        _ => false,
    }
}

/// [`is_mono_crossing_quad`] on dyadic points at a common scale.
pub fn is_mono_crossing_quad_dyadic(s: &[DyadicPoint; 4], rule: &ColorRule) -> bool {
    is_mono_crossing_quad(&quad_at_common_scale(s), rule)
}

/// Canonical textual form: `blue=[-inf,0] vertical=blue`. Rational bounds
/// print as `n` or `n/d` (a `2^-16` input reads back as `1/65536`, the same
/// value); parsing this display form reproduces the rule exactly.
impl fmt::Display for ColorRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "blue={}{},{}{} vertical={}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' },
            self.vertical_color
        )
    }
}

/// Parses one slope bound: `-inf`/`inf`/`+inf`, an integer `n`, a fraction
/// `n/d`, or a power of two `2^e` / `-2^e` (e may be negative).
fn parse_scalar(s: &str) -> Result<SlopeBound, RuleError> {
    let bad = |msg: &str| RuleError::BadScalar(s.to_string(), msg.to_string());
    match s {
        "inf" | "+inf" => return Ok(SlopeBound::PosInf),
        "-inf" => return Ok(SlopeBound::NegInf),
        _ => {}
    }
    if let Some(exp) = s.strip_prefix("2^").or_else(|| s.strip_prefix("+2^")) {
        return parse_pow2(exp, false).ok_or_else(|| bad("power of two out of range"));
    }
    if let Some(exp) = s.strip_prefix("-2^") {
        return parse_pow2(exp, true).ok_or_else(|| bad("power of two out of range"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.parse().map_err(|_| bad("numerator is not an integer"))?;
        let d: i64 = d.parse().map_err(|_| bad("denominator is not an integer"))?;
        if d == 0 {
            return Err(bad("denominator is zero"));
        }
        return Ok(SlopeBound::Finite(Slope::new(n, d)));
    }
    if s.contains('.') {
        return Err(bad("decimal literals are not exact; use n/d or 2^e"));
    }
    let n: i64 = s.parse().map_err(|_| bad("not an integer, fraction, 2^e, or inf"))?;
    Ok(SlopeBound::Finite(Slope::from_integer(n)))
}

fn parse_pow2(exp: &str, negate: bool) -> Option<SlopeBound> {
    let e: i32 = exp.parse().ok()?;
    if !(-62..=62).contains(&e) {
        return None;
    }
    let mag = 1i64 << e.unsigned_abs();
    let r = if e >= 0 { Slope::from_integer(mag) } else { Slope::new(1, mag) };
    Some(SlopeBound::Finite(if negate { -r } else { r }))
}

impl FromStr for ColorRule {
    type Err = RuleError;

    /// Grammar: `blue=<[or(> LO , HI <]or)>` followed by an optional
    /// `vertical=blue|red` (default blue), whitespace-separated.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut interval: Option<&str> = None;
        let mut vertical = Color::Blue;
        for frag in s.split_whitespace() {
            if let Some(iv) = frag.strip_prefix("blue=") {
                interval = Some(iv);
            } else if let Some(v) = frag.strip_prefix("vertical=") {
                vertical = match v {
                    "blue" => Color::Blue,
                    "red" => Color::Red,
                    other => return Err(RuleError::BadVertical(other.to_string())),
                };
            } else {
                return Err(RuleError::UnknownFragment(frag.to_string()));
            }
        }
        let interval = interval.ok_or(RuleError::MissingBlue)?;
        let mut chars = interval.chars();
        let lo_open = match chars.next() {
            Some('[') => false,
            Some('(') => true,
            _ => return Err(RuleError::BadBrackets(interval.to_string())),
        };
        let hi_open = match chars.next_back() {
            Some(']') => false,
            Some(')') => true,
            _ => return Err(RuleError::BadBrackets(interval.to_string())),
        };
        let inner = chars.as_str();
        let (lo_s, hi_s) = inner.split_once(',').ok_or_else(|| {
            RuleError::BadShape(interval.to_string())
        })?;
        if hi_s.contains(',') {
            return Err(RuleError::BadShape(interval.to_string()));
        }
        let lo = parse_scalar(lo_s.trim())?;
        let hi = parse_scalar(hi_s.trim())?;
        ColorRule::new(lo, lo_open, hi, hi_open, vertical)
    }
}
