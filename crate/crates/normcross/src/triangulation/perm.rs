use std::fmt;

use super::TriangulationError;

/// A permutation of the four vertex labels of a tetrahedron, stored as the
/// image of each label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

/// All 24 permutations in lexicographic order of their images, the
/// indexing used by isomorphism signatures.
pub const S4: [Perm4; 24] = [
    Perm4([0, 1, 2, 3]),
    Perm4([0, 1, 3, 2]),
    Perm4([0, 2, 1, 3]),
    Perm4([0, 2, 3, 1]),
    Perm4([0, 3, 1, 2]),
    Perm4([0, 3, 2, 1]),
    Perm4([1, 0, 2, 3]),
    Perm4([1, 0, 3, 2]),
    Perm4([1, 2, 0, 3]),
    Perm4([1, 2, 3, 0]),
    Perm4([1, 3, 0, 2]),
    Perm4([1, 3, 2, 0]),
    Perm4([2, 0, 1, 3]),
    Perm4([2, 0, 3, 1]),
    Perm4([2, 1, 0, 3]),
    Perm4([2, 1, 3, 0]),
    Perm4([2, 3, 0, 1]),
    Perm4([2, 3, 1, 0]),
    Perm4([3, 0, 1, 2]),
    Perm4([3, 0, 2, 1]),
    Perm4([3, 1, 0, 2]),
    Perm4([3, 1, 2, 0]),
    Perm4([3, 2, 0, 1]),
    Perm4([3, 2, 1, 0]),
];

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Result<Self, TriangulationError> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return Err(TriangulationError::BadPermutation(format!("{images:?}")));
            }
            seen[i as usize] = true;
        }
        Ok(Perm4(images))
    }

    /// Parses the four-digit image string, e.g. `"1302"`.
    pub fn from_digits(s: &str) -> Result<Self, TriangulationError> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 || !bytes.iter().all(u8::is_ascii_digit) {
            return Err(TriangulationError::BadPermutation(s.to_string()));
        }
        let mut images = [0u8; 4];
        for (slot, b) in images.iter_mut().zip(bytes) {
            *slot = b - b'0';
        }
        Perm4::new(images)
    }

    pub fn to_digits(self) -> String {
        self.0.iter().map(|d| char::from(b'0' + d)).collect()
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Perm4 {
        let mut out = [0u8; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[other.0[i] as usize];
        }
        Perm4(out)
    }

    /// +1 for even permutations, −1 for odd.
    pub fn sign(self) -> i32 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Index into [`S4`].
    pub fn s4_index(self) -> usize {
        S4.iter().position(|&p| p == self).expect("S4 is complete")
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({})", self.to_digits())
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}
