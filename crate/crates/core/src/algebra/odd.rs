/// A product of distinct odd generators written in increasing index order,
/// stored as a bit mask (bit `j` is the generator `ξ_{j+1}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OddMonomial(pub u32);

impl OddMonomial {
    pub const ONE: OddMonomial = OddMonomial(0);

    /// The single generator with 0-based index `j`.
    pub fn generator(j: usize) -> Self {
        OddMonomial(1 << j)
    }

    /// Monomial from 0-based generator indices in any order, together with the
    /// sign of the reordering; `None` if an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(Self, bool)> {
        let mut acc = OddMonomial::ONE;
        let mut negative = false;
        for &j in indices {
            let (m, neg) = acc.mul(OddMonomial::generator(j))?;
            acc = m;
            negative ^= neg;
        }
        Some((acc, negative))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }

    pub fn contains(self, j: usize) -> bool {
        self.0 & (1 << j) != 0
    }

    /// 0-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&j| self.contains(j)).collect()
    }

    /// Product `self · rhs` in normal form: `None` if a generator repeats,
    /// otherwise the monomial and whether a sign flip occurred.
    pub fn mul(self, rhs: OddMonomial) -> Option<(OddMonomial, bool)> {
        if self.0 & rhs.0 != 0 {
            return None;
        }
        // Each generator of rhs passes every generator of self with a larger index.
        let mut swaps = 0u32;
        let mut b = rhs.0;
        while b != 0 {
            let j = b.trailing_zeros();
            swaps += (self.0 >> (j + 1)).count_ones();
            b &= b - 1;
        }
        Some((OddMonomial(self.0 | rhs.0), swaps % 2 == 1))
    }

    /// Left derivative `∂/∂ξ_j`: `None` if `ξ_j` is absent, otherwise the
    /// remaining monomial and the sign of moving `ξ_j` to the front.
    pub fn left_derivative(self, j: usize) -> Option<(OddMonomial, bool)> {
        if !self.contains(j) {
            return None;
        }
        let below = (self.0 & ((1u32 << j) - 1)).count_ones();
        Some((OddMonomial(self.0 & !(1 << j)), below % 2 == 1))
    }

    /// All monomials of the given degree in `q` generators, in increasing mask order.
    pub fn all_of_degree(q: usize, degree: usize) -> Vec<OddMonomial> {
        (0u32..(1u32 << q))
            .filter(|m| m.count_ones() as usize == degree)
            .map(OddMonomial)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutation_and_nilpotency() {
        let x1 = OddMonomial::generator(0);
        let x2 = OddMonomial::generator(1);
        assert_eq!(x1.mul(x1), None);
        assert_eq!(x2.mul(x1), Some((OddMonomial(0b11), true)));
        assert_eq!(x1.mul(x2), Some((OddMonomial(0b11), false)));
        assert_eq!(OddMonomial::from_indices(&[2, 0, 1]), Some((OddMonomial(0b111), false)));
        assert_eq!(OddMonomial::from_indices(&[1, 0, 2]), Some((OddMonomial(0b111), true)));
    }

    #[test]
    fn left_derivative_signs() {
        let m = OddMonomial(0b111);
        assert_eq!(m.left_derivative(0), Some((OddMonomial(0b110), false)));
        assert_eq!(m.left_derivative(1), Some((OddMonomial(0b101), true)));
        assert_eq!(m.left_derivative(2), Some((OddMonomial(0b011), false)));
        assert_eq!(OddMonomial(0b101).left_derivative(1), None);
    }
}
