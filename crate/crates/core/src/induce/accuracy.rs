use std::cmp::Ordering;
use std::fmt;

/// An exact ratio `hits / total` with `total ≥ 1`, compared as a rational.
#[derive(Debug, Clone, Copy)]
pub struct Accuracy {
    pub hits: usize,
    pub total: usize,
}

impl Accuracy {
    pub fn new(hits: usize, total: usize) -> Self {
        assert!(total > 0 && hits <= total, "accuracy {hits}/{total} out of range");
        Accuracy { hits, total }
    }

    pub fn is_perfect(&self) -> bool {
        self.hits == self.total
    }

    pub fn as_f64(&self) -> f64 {
        self.hits as f64 / self.total as f64
    }
}

impl PartialEq for Accuracy {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Accuracy {}

impl PartialOrd for Accuracy {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Accuracy {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.hits as u128 * other.total as u128;
        let rhs = other.hits as u128 * self.total as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Accuracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.hits, self.total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compares_as_rational() {
        assert_eq!(Accuracy::new(1, 2), Accuracy::new(2, 4));
        assert!(Accuracy::new(2, 3) > Accuracy::new(1, 2));
        assert!(Accuracy::new(3, 3).is_perfect());
        assert_eq!(Accuracy::new(1, 2).as_f64(), 0.5);
    }

    #[test]
    #[should_panic]
    fn rejects_zero_total() {
        Accuracy::new(0, 0);
    }
}
