use std::fmt;

/// A point with exact integer coordinates.
///
/// Coordinates must stay within `i64`; all derived predicate arithmetic is
/// performed in checked `i128` and aborts on overflow rather than degrading.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Largest supported dyadic scale. At scale 53 every coordinate is a 53-bit
/// numerator, so a four-point orientation determinant needs at most ~2·53+3
/// bits and fits `i128` with room to spare.
pub const MAX_DYADIC_SCALE: u8 = 53;

/// An exact dyadic rational point `(nx/2^k, ny/2^k)` in the closed unit
/// square.
///
/// This is the exact representation of "continuous" samples: predicates on
/// dyadic points reduce to integer predicates on the numerators at a common
/// scale, so no decision ever goes through floating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicPoint {
    nx: i64,
    ny: i64,
    k: u8,
}

impl DyadicPoint {
    /// Builds `(nx/2^k, ny/2^k)`. Panics if the invariants `k ≤ 53` and
    /// `0 ≤ nx, ny ≤ 2^k` do not hold; callers own the sampling range.
    pub fn new(nx: i64, ny: i64, k: u8) -> Self {
        assert!(k <= MAX_DYADIC_SCALE, "dyadic scale {k} exceeds {MAX_DYADIC_SCALE}");
        let max = 1i64 << k;
        assert!(
            (0..=max).contains(&nx) && (0..=max).contains(&ny),
            "dyadic numerators ({nx}, {ny}) out of [0, 2^{k}]"
        );
        Self { nx, ny, k }
    }

    pub fn nx(&self) -> i64 {
        self.nx
    }

    pub fn ny(&self) -> i64 {
        self.ny
    }

    pub fn scale(&self) -> u8 {
        self.k
    }

    /// The numerators of this point rescaled to a coarser-grained common
    /// scale `k ≥ self.scale()` (value is unchanged: `nx/2^k` stays equal).
    pub fn numerators_at_scale(&self, k: u8) -> LatticePoint {
        assert!(
            (self.k..=MAX_DYADIC_SCALE).contains(&k),
            "target scale {k} not in [{}, {MAX_DYADIC_SCALE}]",
            self.k
        );
        let shift = k - self.k;
        LatticePoint::new(self.nx << shift, self.ny << shift)
    }
}

impl fmt::Display for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/2^{k}, {}/2^{k})", self.nx, self.ny, k = self.k)
    }
}

/// Rescales a quadruple of dyadic points to their maximum scale, returning
/// integer numerators on which all predicates are exact.
pub fn quad_at_common_scale(quad: &[DyadicPoint; 4]) -> [LatticePoint; 4] {
    let k = quad.iter().map(DyadicPoint::scale).max().expect("non-empty");
    [
        quad[0].numerators_at_scale(k),
        quad[1].numerators_at_scale(k),
        quad[2].numerators_at_scale(k),
        quad[3].numerators_at_scale(k),
    ]
}

/// Rescales an arbitrary slice of dyadic points to a common scale.
pub fn slice_at_common_scale(points: &[DyadicPoint]) -> Vec<LatticePoint> {
    let k = points.iter().map(DyadicPoint::scale).max().unwrap_or(0);
    points.iter().map(|p| p.numerators_at_scale(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_invariants_enforced() {
        let p = DyadicPoint::new(3, 4, 2);
        assert_eq!((p.nx(), p.ny(), p.scale()), (3, 4, 2));
        assert!(std::panic::catch_unwind(|| DyadicPoint::new(5, 0, 2)).is_err());
        assert!(std::panic::catch_unwind(|| DyadicPoint::new(-1, 0, 2)).is_err());
        assert!(std::panic::catch_unwind(|| DyadicPoint::new(0, 0, 54)).is_err());
    }

    #[test]
    fn rescaling_preserves_value() {
        // 3/4 at scale 2 equals 6/8 at scale 3.
        let p = DyadicPoint::new(3, 1, 2);
        assert_eq!(p.numerators_at_scale(3), LatticePoint::new(6, 2));
        assert_eq!(p.numerators_at_scale(2), LatticePoint::new(3, 1));
    }

    #[test]
    fn common_scale_uses_maximum() {
        let q = [
            DyadicPoint::new(1, 1, 1), // (1/2, 1/2)
            DyadicPoint::new(1, 0, 2), // (1/4, 0)
            DyadicPoint::new(1, 1, 0), // (1, 1)
            DyadicPoint::new(3, 2, 2), // (3/4, 1/2)
        ];
        let scaled = quad_at_common_scale(&q);
        assert_eq!(scaled[0], LatticePoint::new(2, 2));
        assert_eq!(scaled[1], LatticePoint::new(1, 0));
        assert_eq!(scaled[2], LatticePoint::new(4, 4));
        assert_eq!(scaled[3], LatticePoint::new(3, 2));
        assert_eq!(slice_at_common_scale(&q), scaled.to_vec());
    }
}
