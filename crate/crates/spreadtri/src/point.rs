//! Basic geometric value types shared by every module.

/// A point in 3-space.
///
/// The `id` is the point's ordinal within its point set. It drives the
/// symbolic perturbation used to resolve degenerate predicate calls, so ids
/// must be unique within any set that is handed to a predicate or builder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub id: u32,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64, id: u32) -> Self {
        Point3 { x, y, z, id }
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Exact coordinate equality, ignoring ids.
    pub fn same_position(&self, other: &Point3) -> bool {
        self.x == other.x && self.y == other.y && self.z == other.z
    }

    pub fn dist_sq(&self, other: &Point3) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        dx * dx + dy * dy + dz * dz
    }

    pub fn dist(&self, other: &Point3) -> f64 {
        self.dist_sq(other).sqrt()
    }
}

/// A point with a weight, equivalently a ball center with squared radius.
///
/// Negative weights are allowed; the lifted-hull formulation of regular
/// triangulations does not require the ball interpretation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedPoint {
    pub point: Point3,
    pub weight: f64,
}

impl WeightedPoint {
    pub fn new(point: Point3, weight: f64) -> Self {
        WeightedPoint { point, weight }
    }

    pub fn unweighted(point: Point3) -> Self {
        WeightedPoint { point, weight: 0.0 }
    }
}

/// Sign of an exactly evaluated determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn from_f64(v: f64) -> Sign {
        if v > 0.0 {
            Sign::Positive
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// A line segment with distinct endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point3,
    pub b: Point3,
}

impl Segment {
    pub fn new(a: Point3, b: Point3) -> Self {
        debug_assert!(!a.same_position(&b), "segment endpoints must differ");
        Segment { a, b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_flip_round_trips() {
        for s in [Sign::Negative, Sign::Zero, Sign::Positive] {
            assert_eq!(s.flip().flip(), s);
        }
    }

    #[test]
    fn point_distance() {
        let p = Point3::new(0.0, 0.0, 0.0, 0);
        let q = Point3::new(3.0, 4.0, 0.0, 1);
        assert_eq!(p.dist(&q), 5.0);
    }
}
