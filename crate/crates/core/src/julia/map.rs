use core::fmt;

use num_complex::Complex64;

use super::JuliaError;

/// `z ↦ z² + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticMap {
    c: Complex64,
}

impl QuadraticMap {
    pub fn new(c: Complex64) -> Self {
        QuadraticMap { c }
    }

    /// `z² − 1/2`.
    pub fn minus_half() -> Self {
        Self::new(Complex64::new(-0.5, 0.0))
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// `R = (1 + √(1 + 4|c|))/2`, the positive root of `R² − |c| = R`.
    /// Every point with `|z| > R` escapes, and the disk `|z| <= R` is
    /// mapped into itself by both inverse branches.
    pub fn escape_radius(&self) -> f64 {
        0.5 * (1.0 + libm::sqrt(1.0 + 4.0 * self.c.norm()))
    }

    pub fn forward(&self, z: Complex64) -> Complex64 {
        z * z + self.c
    }

    /// The two preimages `±√(w − c)`; the principal root comes first.
    pub fn inverse_branches(&self, w: Complex64) -> Result<(Complex64, Complex64), JuliaError> {
        let d = w - self.c;
        if d.re == 0.0 && d.im == 0.0 {
            return Err(JuliaError::BranchPoint { re: w.re, im: w.im });
        }
        let s = d.sqrt();
        Ok((s, -s))
    }

    /// The preimage of `w` lying in the closed quadrant `q`. At the branch
    /// point both roots are zero and zero is returned.
    pub fn branch_into(&self, q: Quadrant, w: Complex64) -> Complex64 {
        let s = (w - self.c).sqrt();
        let (sx, sy) = q.signs();
        if sx * s.re + sy * s.im >= 0.0 {
            s
        } else {
            -s
        }
    }
}

/// The four quadrants, counter-clockwise from the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quadrant {
    A,
    B,
    C,
    D,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::A, Quadrant::B, Quadrant::C, Quadrant::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Quadrant> {
        Self::ALL.get(i).copied()
    }

    /// Signs of the real and imaginary parts inside the quadrant.
    pub fn signs(self) -> (f64, f64) {
        match self {
            Quadrant::A => (1.0, 1.0),
            Quadrant::B => (-1.0, 1.0),
            Quadrant::C => (-1.0, -1.0),
            Quadrant::D => (1.0, -1.0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Quadrant::A => 'A',
            Quadrant::B => 'B',
            Quadrant::C => 'C',
            Quadrant::D => 'D',
        }
    }

    /// Quadrants whose pieces, pulled back into `self`, make up `self`'s
    /// piece: the upper half-plane feeds A and C, the lower feeds B and D.
    pub fn successors(self) -> [Quadrant; 2] {
        match self {
            Quadrant::A | Quadrant::C => [Quadrant::A, Quadrant::B],
            Quadrant::B | Quadrant::D => [Quadrant::C, Quadrant::D],
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}
