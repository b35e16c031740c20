use std::fmt;

/// A permutation of the tetrahedron vertex labels `{0, 1, 2, 3}`.
///
/// Stored as the image of each label. Composition follows function
/// composition: `a.compose(b)` maps `v` to `a(b(v))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from its images, or `None` if they are not a
    /// bijection on `{0, 1, 2, 3}`.
    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &img in &images {
            if img > 3 || seen[img as usize] {
                return None;
            }
            seen[img as usize] = true;
        }
        Some(Perm4(images))
    }

    /// The transposition swapping `a` and `b` (identity when `a == b`).
    pub fn transposition(a: usize, b: usize) -> Self {
        let mut images = [0, 1, 2, 3];
        images.swap(a, b);
        Perm4(images)
    }

    #[inline]
    pub fn apply(self, v: usize) -> usize {
        self.0[v] as usize
    }

    #[inline]
    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn compose(self, inner: Perm4) -> Perm4 {
        let mut images = [0u8; 4];
        for (v, img) in images.iter_mut().enumerate() {
            *img = self.0[inner.0[v] as usize];
        }
        Perm4(images)
    }

    pub fn inverse(self) -> Perm4 {
        let mut images = [0u8; 4];
        for v in 0..4 {
            images[self.0[v] as usize] = v as u8;
        }
        Perm4(images)
    }

    /// All 24 permutations in lexicographic order of their image strings.
    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..256u32).filter_map(|code| {
            let images = [
                (code >> 6) as u8 & 3,
                (code >> 4) as u8 & 3,
                (code >> 2) as u8 & 3,
                code as u8 & 3,
            ];
            Perm4::new(images)
        })
    }

    /// Parses the four-digit image form used by gluing tables, e.g. `"1230"`.
    pub fn parse(text: &str) -> Option<Self> {
        let bytes = text.as_bytes();
        if bytes.len() != 4 {
            return None;
        }
        let mut images = [0u8; 4];
        for (img, &b) in images.iter_mut().zip(bytes) {
            if !(b'0'..=b'3').contains(&b) {
                return None;
            }
            *img = b - b'0';
        }
        Perm4::new(images)
    }
}

impl Default for Perm4 {
    fn default() -> Self {
        Perm4::IDENTITY
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a}{b}{c}{d}")
    }
}
