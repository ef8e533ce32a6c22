use std::fmt;

/// Largest supported number of basis vectors. Quadvectors stop squaring to
/// scalars at n = 6, which breaks the Study-number machinery, so everything
/// here is capped at n = 5.
pub const MAX_DIM: usize = 5;

/// Metric descriptor of a real geometric algebra with n = p + q + r basis
/// vectors squaring to +1 (p of them), -1 (q) and 0 (r).
///
/// Basis vectors keep their declaration order; the Euclidean-PGA convention
/// of a leading null vector e0 is expressed as `[0, 1, 1, 1]` together with a
/// label offset of 0, so blades print as e0..e3 instead of e1..e4.
#[derive(Clone, Copy, Debug)]
pub struct Signature {
    squares: [i8; MAX_DIM],
    n: u8,
    label_offset: u8,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        // Label offset is presentation only; the algebra is its metric.
        self.n == other.n && self.squares[..self.n as usize] == other.squares[..other.n as usize]
    }
}
impl Eq for Signature {}

impl Signature {
    /// Builds a signature from per-basis-vector squares in declaration order.
    ///
    /// Panics unless `1 <= len <= 5` and every entry is one of -1, 0, +1.
    pub fn new(squares: &[i8]) -> Self {
        Self::with_label_offset(squares, 1)
    }

    fn with_label_offset(squares: &[i8], label_offset: u8) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&squares.len()),
            "signature must have between 1 and {MAX_DIM} basis vectors, got {}",
            squares.len()
        );
        let mut s = [0i8; MAX_DIM];
        for (i, &sq) in squares.iter().enumerate() {
            assert!(
                matches!(sq, -1..=1),
                "basis square must be -1, 0 or +1, got {sq}"
            );
            s[i] = sq;
        }
        Signature {
            squares: s,
            n: squares.len() as u8,
            label_offset,
        }
    }

    /// Euclidean 3-space, R_3.
    pub fn r3() -> Self {
        Self::new(&[1, 1, 1])
    }

    /// Elliptic/spherical PGA, R_4.
    pub fn r4() -> Self {
        Self::new(&[1, 1, 1, 1])
    }

    /// Spacetime algebra / hyperbolic PGA, R_{3,1} with e4^2 = -1.
    pub fn r31() -> Self {
        Self::new(&[1, 1, 1, -1])
    }

    /// Euclidean 3D PGA, R_{3,0,1} with the null vector labelled e0.
    pub fn r301() -> Self {
        Self::with_label_offset(&[0, 1, 1, 1], 0)
    }

    /// Conformal GA, R_{4,1} with e5^2 = -1.
    pub fn r41() -> Self {
        Self::new(&[1, 1, 1, 1, -1])
    }

    /// Custom signature: p plus-vectors, then q minus-vectors, then r nulls,
    /// labelled e1..en.
    pub fn custom(p: usize, q: usize, r: usize) -> Self {
        let mut squares = Vec::with_capacity(p + q + r);
        squares.extend(std::iter::repeat_n(1, p));
        squares.extend(std::iter::repeat_n(-1, q));
        squares.extend(std::iter::repeat_n(0, r));
        Self::new(&squares)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Number of canonical basis blades, 2^n.
    pub fn blade_count(&self) -> usize {
        1 << self.n
    }

    pub fn basis_square(&self, i: usize) -> i8 {
        assert!(i < self.n(), "basis index {i} out of range for n = {}", self.n);
        self.squares[i]
    }

    pub fn p(&self) -> usize {
        self.squares[..self.n()].iter().filter(|&&s| s == 1).count()
    }

    pub fn q(&self) -> usize {
        self.squares[..self.n()].iter().filter(|&&s| s == -1).count()
    }

    pub fn r(&self) -> usize {
        self.squares[..self.n()].iter().filter(|&&s| s == 0).count()
    }

    /// Digit printed for basis vector `i` (0-based declaration index).
    pub fn basis_label(&self, i: usize) -> usize {
        i + self.label_offset as usize
    }

    /// Inverse of [`basis_label`](Self::basis_label): digit to declaration index.
    pub fn index_of_label(&self, digit: usize) -> Option<usize> {
        let off = self.label_offset as usize;
        if digit < off || digit - off >= self.n() {
            None
        } else {
            Some(digit - off)
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{{{},{},{}}}", self.p(), self.q(), self.r())
    }
}

/// A canonical basis blade: the bit `i` of `mask` selects basis vector `i`,
/// factors ordered by ascending declaration index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Declaration indices of the participating basis vectors, ascending.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |i| mask & (1 << i) != 0)
    }
}

/// Sign of reordering the concatenation of two canonical blades back into
/// canonical order, counting transpositions of basis vectors.
pub(crate) fn reorder_sign(a: u32, b: u32) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Geometric product of two canonical basis blades: `(coefficient, blade)`.
/// Repeated basis vectors annihilate against the metric, so the coefficient
/// is 0, +-1 for degenerate factors and +-1 otherwise.
pub(crate) fn blade_product(sig: &Signature, a: u32, b: u32) -> (f64, u32) {
    let mut sign = reorder_sign(a, b);
    let mut common = a & b;
    while common != 0 {
        let i = common.trailing_zeros() as usize;
        sign *= sig.basis_square(i) as f64;
        common &= common - 1;
    }
    (sign, a ^ b)
}

/// Reverse sign for a grade-k blade: (-1)^(k(k-1)/2).
pub(crate) fn reverse_sign(grade: usize) -> f64 {
    if (grade * grade.wrapping_sub(1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_labels() {
        let s = Signature::r301();
        assert_eq!((s.p(), s.q(), s.r()), (3, 0, 1));
        assert_eq!(s.basis_label(0), 0);
        assert_eq!(s.index_of_label(3), Some(3));
        assert_eq!(s.index_of_label(4), None);

        let s = Signature::r41();
        assert_eq!((s.p(), s.q(), s.r()), (4, 1, 0));
        assert_eq!(s.basis_label(0), 1);
        assert_eq!(s.index_of_label(0), None);
        assert_eq!(s.index_of_label(5), Some(4));
    }

    #[test]
    fn custom_matches_named_metric() {
        // Same metric, different labels: still the same algebra.
        assert_eq!(Signature::custom(3, 1, 0), Signature::r31());
        assert_ne!(Signature::custom(3, 0, 1), Signature::r301()); // null position differs
    }

    #[test]
    fn blade_reordering_signs() {
        // e2 * e1 = -e12
        assert_eq!(reorder_sign(0b10, 0b01), -1.0);
        // e1 * e2 = +e12
        assert_eq!(reorder_sign(0b01, 0b10), 1.0);
        // e12 * e12: two swaps to sort e1e2e1e2 -> e1e1e2e2
        let s = Signature::r3();
        let (c, m) = blade_product(&s, 0b11, 0b11);
        assert_eq!((c, m), (-1.0, 0));
    }

    #[test]
    fn degenerate_vector_annihilates() {
        let s = Signature::r301();
        let (c, m) = blade_product(&s, 0b0001, 0b0001); // e0 * e0
        assert_eq!((c, m), (0.0, 0));
    }

    #[test]
    fn reverse_signs_by_grade() {
        assert_eq!(reverse_sign(0), 1.0);
        assert_eq!(reverse_sign(1), 1.0);
        assert_eq!(reverse_sign(2), -1.0);
        assert_eq!(reverse_sign(3), -1.0);
        assert_eq!(reverse_sign(4), 1.0);
        assert_eq!(reverse_sign(5), 1.0);
    }
}
