//! Elements of dihedral groups written as affine maps `x -> sign * x + shift`.
//!
//! One representation serves every group in the crate: the finite dihedral
//! group of order `2n` (shift taken mod `n`), the infinite dihedral group
//! (integer shift), the bounded subset with `|shift| < n`, and the cyclic
//! group of rotations mod `n`. Which one is meant is carried separately by a
//! [`GroupContext`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest modulus accepted by the context constructors.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element {element} lies outside {context}")]
    OutOfRange {
        element: DihedralElement,
        context: GroupContext,
    },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid group context: {0}")]
    InvalidContext(String),
    #[error("{0} is infinite")]
    Infinite(GroupContext),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// The matrix `[[sign, shift], [0, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub sign: Sign,
    pub shift: i64,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement {
        sign: Sign::Plus,
        shift: 0,
    };

    pub const fn rotation(shift: i64) -> Self {
        DihedralElement {
            sign: Sign::Plus,
            shift,
        }
    }

    pub const fn reflection(shift: i64) -> Self {
        DihedralElement {
            sign: Sign::Minus,
            shift,
        }
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn is_rotation(self) -> bool {
        self.sign == Sign::Plus
    }

    pub fn is_reflection(self) -> bool {
        self.sign == Sign::Minus
    }

    /// Product in the infinite group, no reduction.
    pub fn compose(self, other: Self) -> Self {
        DihedralElement {
            sign: self.sign.times(other.sign),
            shift: self.shift + self.sign.as_i64() * other.shift,
        }
    }

    /// Inverse in the infinite group, no reduction.
    pub fn invert(self) -> Self {
        DihedralElement {
            sign: self.sign,
            shift: -self.sign.as_i64() * self.shift,
        }
    }

    /// Image under the quotient map onto the group of order `2n`.
    pub fn project(self, n: u64) -> Self {
        DihedralElement {
            sign: self.sign,
            shift: self.shift.rem_euclid(n as i64),
        }
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{sign}{}", self.shift)
    }
}

impl FromStr for DihedralElement {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(AlgebraError::InvalidElement(s.to_string())),
        };
        let shift = chars
            .as_str()
            .parse::<i64>()
            .map_err(|_| AlgebraError::InvalidElement(s.to_string()))?;
        Ok(DihedralElement { sign, shift })
    }
}

/// Which group an element is read in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupContext {
    /// Dihedral group of order `2n`, shift in `0..n`.
    DihedralMod(u64),
    /// Elements of the infinite group with `|shift| < n`; not closed under products.
    DihedralBounded(u64),
    DihedralInfinite,
    /// Rotations mod `n` only.
    CyclicRotationsMod(u64),
}

impl GroupContext {
    pub fn dihedral_mod(n: u64) -> Result<Self, AlgebraError> {
        check_modulus(n).map(GroupContext::DihedralMod)
    }

    pub fn dihedral_bounded(n: u64) -> Result<Self, AlgebraError> {
        check_modulus(n).map(GroupContext::DihedralBounded)
    }

    pub fn cyclic(n: u64) -> Result<Self, AlgebraError> {
        check_modulus(n).map(GroupContext::CyclicRotationsMod)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            GroupContext::DihedralMod(n)
            | GroupContext::DihedralBounded(n)
            | GroupContext::CyclicRotationsMod(n) => Some(n),
            GroupContext::DihedralInfinite => None,
        }
    }

    pub fn has_reflections(self) -> bool {
        !matches!(self, GroupContext::CyclicRotationsMod(_))
    }

    /// Whether `x` is already in the canonical form of this context.
    pub fn contains(self, x: DihedralElement) -> bool {
        match self {
            GroupContext::DihedralMod(n) => (0..n as i64).contains(&x.shift),
            GroupContext::DihedralBounded(n) => x.shift.unsigned_abs() < n,
            GroupContext::DihedralInfinite => true,
            GroupContext::CyclicRotationsMod(n) => {
                x.is_rotation() && (0..n as i64).contains(&x.shift)
            }
        }
    }

    /// Bring a product computed in the infinite group back into this context.
    pub fn reduce(self, x: DihedralElement) -> Result<DihedralElement, AlgebraError> {
        match self {
            GroupContext::DihedralMod(n) => Ok(x.project(n)),
            GroupContext::CyclicRotationsMod(n) if x.is_rotation() => Ok(x.project(n)),
            _ if self.contains(x) => Ok(x),
            _ => Err(AlgebraError::OutOfRange {
                element: x,
                context: self,
            }),
        }
    }

    pub fn multiply(
        self,
        x: DihedralElement,
        y: DihedralElement,
    ) -> Result<DihedralElement, AlgebraError> {
        self.reduce(x.compose(y))
    }

    pub fn inverse(self, x: DihedralElement) -> DihedralElement {
        match self {
            GroupContext::DihedralMod(n) | GroupContext::CyclicRotationsMod(n) => {
                x.invert().project(n)
            }
            _ => x.invert(),
        }
    }

    pub fn rotation(self, a: i64) -> Result<DihedralElement, AlgebraError> {
        self.reduce(DihedralElement::rotation(a))
    }

    pub fn reflection(self, a: i64) -> Result<DihedralElement, AlgebraError> {
        self.reduce(DihedralElement::reflection(a))
    }

    /// All elements in enumeration order: rotations by ascending shift, then reflections.
    pub fn elements(self) -> Result<Vec<DihedralElement>, AlgebraError> {
        let shifts: Vec<i64> = match self {
            GroupContext::DihedralMod(n) | GroupContext::CyclicRotationsMod(n) => {
                (0..n as i64).collect()
            }
            GroupContext::DihedralBounded(n) => (1 - n as i64..n as i64).collect(),
            GroupContext::DihedralInfinite => return Err(AlgebraError::Infinite(self)),
        };
        let mut out: Vec<DihedralElement> = shifts
            .iter()
            .map(|&a| DihedralElement::rotation(a))
            .collect();
        if self.has_reflections() {
            out.extend(shifts.iter().map(|&a| DihedralElement::reflection(a)));
        }
        Ok(out)
    }

    /// Elements other than the identity, in enumeration order.
    pub fn non_identity_elements(self) -> Result<Vec<DihedralElement>, AlgebraError> {
        let mut all = self.elements()?;
        all.retain(|x| !x.is_identity());
        Ok(all)
    }

    /// Membership in the commutator subgroup of the ambient group.
    pub fn in_commutator_subgroup(self, x: DihedralElement) -> bool {
        match self {
            GroupContext::DihedralMod(n) => {
                x.is_rotation() && (n % 2 == 1 || x.shift.rem_euclid(2) == 0)
            }
            GroupContext::DihedralBounded(_) | GroupContext::DihedralInfinite => {
                x.is_rotation() && x.shift.rem_euclid(2) == 0
            }
            GroupContext::CyclicRotationsMod(n) => x.shift.rem_euclid(n as i64) == 0,
        }
    }
}

fn check_modulus(n: u64) -> Result<u64, AlgebraError> {
    if (2..=MAX_MODULUS).contains(&n) {
        Ok(n)
    } else {
        Err(AlgebraError::InvalidContext(format!(
            "modulus {n} outside 2..={MAX_MODULUS}"
        )))
    }
}

impl fmt::Display for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupContext::DihedralMod(n) => write!(f, "D2n:{n}"),
            GroupContext::DihedralBounded(n) => write!(f, "Dlt:{n}"),
            GroupContext::DihedralInfinite => write!(f, "D"),
            GroupContext::CyclicRotationsMod(n) => write!(f, "Zn:{n}"),
        }
    }
}

impl FromStr for GroupContext {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "D" {
            return Ok(GroupContext::DihedralInfinite);
        }
        let (kind, n) = s
            .split_once(':')
            .ok_or_else(|| AlgebraError::InvalidContext(s.to_string()))?;
        let n: u64 = n
            .parse()
            .map_err(|_| AlgebraError::InvalidContext(s.to_string()))?;
        match kind {
            "D2n" => GroupContext::dihedral_mod(n),
            "Dlt" => GroupContext::dihedral_bounded(n),
            "Zn" => GroupContext::cyclic(n),
            _ => Err(AlgebraError::InvalidContext(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64) -> DihedralElement {
        DihedralElement::rotation(a)
    }

    fn s(a: i64) -> DihedralElement {
        DihedralElement::reflection(a)
    }

    #[test]
    fn group_laws_hold_exhaustively_for_small_moduli() {
        for n in 2..=12 {
            let ctx = GroupContext::DihedralMod(n);
            let els = ctx.elements().unwrap();
            assert_eq!(els.len() as u64, 2 * n);
            for &x in &els {
                assert_eq!(
                    ctx.multiply(x, ctx.inverse(x)).unwrap(),
                    DihedralElement::IDENTITY
                );
                assert_eq!(ctx.multiply(DihedralElement::IDENTITY, x).unwrap(), x);
                for &y in &els {
                    let xy = ctx.multiply(x, y).unwrap();
                    assert!(ctx.contains(xy));
                    for &z in &els {
                        let left = ctx.multiply(xy, z).unwrap();
                        let right = ctx.multiply(x, ctx.multiply(y, z).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn matches_matrix_product() {
        // Independent check against 2x2 integer matrices.
        let mat = |x: DihedralElement| [[x.sign.as_i64(), x.shift], [0, 1]];
        for a in -4..=4 {
            for b in -4..=4 {
                for (x, y) in [(r(a), r(b)), (r(a), s(b)), (s(a), r(b)), (s(a), s(b))] {
                    let (p, q) = (mat(x), mat(y));
                    let prod = [[p[0][0] * q[0][0], p[0][0] * q[0][1] + p[0][1]], [0, 1]];
                    assert_eq!(mat(x.compose(y)), prod);
                }
            }
        }
    }

    #[test]
    fn reflection_conjugation_inverts_rotations() {
        let ctx = GroupContext::DihedralMod(7);
        for a in 0..7 {
            for b in 0..7 {
                let conj = ctx
                    .multiply(ctx.multiply(s(b), r(a)).unwrap(), s(b))
                    .unwrap();
                assert_eq!(conj, ctx.inverse(r(a)));
            }
        }
    }

    #[test]
    fn bounded_subset_has_expected_size_and_rejects_overflow() {
        for n in 2..10u64 {
            let ctx = GroupContext::DihedralBounded(n);
            assert_eq!(ctx.elements().unwrap().len() as u64, 2 * (2 * n - 1));
            assert_eq!(ctx.non_identity_elements().unwrap().len() as u64, 4 * n - 3);
        }
        let ctx = GroupContext::DihedralBounded(4);
        assert_eq!(ctx.multiply(r(2), r(1)).unwrap(), r(3));
        assert!(matches!(
            ctx.multiply(r(2), r(2)),
            Err(AlgebraError::OutOfRange { .. })
        ));
    }

    #[test]
    fn projection_is_a_homomorphism() {
        for n in 2..=6u64 {
            for a in -8..=8 {
                for b in -8..=8 {
                    for (x, y) in [(r(a), s(b)), (s(a), s(b)), (s(a), r(b))] {
                        let lhs = x.compose(y).project(n);
                        let rhs = GroupContext::DihedralMod(n)
                            .multiply(x.project(n), y.project(n))
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn commutator_subgroup_sizes() {
        for n in 2..=12u64 {
            let ctx = GroupContext::DihedralMod(n);
            let els = ctx.elements().unwrap();
            // Close the set of commutators under products.
            let mut comm: std::collections::BTreeSet<DihedralElement> = els
                .iter()
                .flat_map(|&x| {
                    els.iter().map(move |&y| {
                        let xy = ctx.multiply(x, y).unwrap();
                        let xiyi = ctx.multiply(ctx.inverse(x), ctx.inverse(y)).unwrap();
                        ctx.multiply(xy, xiyi).unwrap()
                    })
                })
                .collect();
            loop {
                let next: std::collections::BTreeSet<_> = comm
                    .iter()
                    .flat_map(|&a| comm.iter().map(move |&b| ctx.multiply(a, b).unwrap()))
                    .collect();
                if next.len() == comm.len() {
                    break;
                }
                comm = next;
            }
            let expected = if n % 2 == 1 { n } else { n / 2 };
            assert_eq!(comm.len() as u64, expected, "n = {n}");
            for &x in &els {
                assert_eq!(ctx.in_commutator_subgroup(x), comm.contains(&x));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for x in [r(0), r(-3), s(2), s(-2), r(17)] {
            assert_eq!(x.to_string().parse::<DihedralElement>().unwrap(), x);
        }
        assert_eq!("-2".parse::<DihedralElement>().unwrap(), s(2));
        assert_eq!("--2".parse::<DihedralElement>().unwrap(), s(-2));
        assert!("2".parse::<DihedralElement>().is_err());
        for c in ["D2n:4", "Dlt:3", "Zn:5", "D"] {
            assert_eq!(c.parse::<GroupContext>().unwrap().to_string(), c);
        }
        assert!("D2n:1".parse::<GroupContext>().is_err());
        assert!("Q8:2".parse::<GroupContext>().is_err());
    }

    #[test]
    fn enumeration_order_is_rotations_then_reflections() {
        let els = GroupContext::DihedralBounded(2).elements().unwrap();
        assert_eq!(els, vec![r(-1), r(0), r(1), s(-1), s(0), s(1)]);
        let els = GroupContext::CyclicRotationsMod(3).elements().unwrap();
        assert_eq!(els, vec![r(0), r(1), r(2)]);
    }
}
