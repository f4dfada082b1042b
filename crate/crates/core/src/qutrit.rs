//! Exact linear-algebra model of the qutrit: basis states, the three-angle
//! rotation decomposition, unitary evolution, and the two blocking-based
//! measurement channels (pass-one and block-one).

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Measurement outcome of an unambiguous (single-mode-pass) measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    A,
    B,
    C,
}

impl Outcome {
    pub const ALL: [Outcome; 3] = [Outcome::A, Outcome::B, Outcome::C];

    pub fn index(self) -> usize {
        match self {
            Outcome::A => 0,
            Outcome::B => 1,
            Outcome::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Outcome {
        Outcome::ALL[i]
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::A => "A",
            Outcome::B => "B",
            Outcome::C => "C",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Outcome of an ambiguous (single-mode-block) measurement, identified by the
/// one basis state it excludes: `excluded = C` stands for the outcome A∪B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AmbiguousOutcome {
    pub excluded: Outcome,
}

impl AmbiguousOutcome {
    pub const ALL: [AmbiguousOutcome; 3] = [
        AmbiguousOutcome { excluded: Outcome::A },
        AmbiguousOutcome { excluded: Outcome::B },
        AmbiguousOutcome { excluded: Outcome::C },
    ];

    /// The two basis outcomes compatible with this result.
    pub fn members(self) -> [Outcome; 2] {
        match self.excluded {
            Outcome::A => [Outcome::B, Outcome::C],
            Outcome::B => [Outcome::A, Outcome::C],
            Outcome::C => [Outcome::A, Outcome::B],
        }
    }

    pub fn contains(self, n: Outcome) -> bool {
        n != self.excluded
    }
}

impl fmt::Display for AmbiguousOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y] = self.members();
        write!(f, "{}u{}", x, y)
    }
}

/// Pure qutrit state; possibly sub-normalized after a measurement branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritState {
    amps: [Complex64; 3],
}

impl QutritState {
    pub fn new(amp_a: Complex64, amp_b: Complex64, amp_c: Complex64) -> Self {
        QutritState { amps: [amp_a, amp_b, amp_c] }
    }

    pub fn from_reals(a: f64, b: f64, c: f64) -> Self {
        QutritState::new(a.into(), b.into(), c.into())
    }

    /// The basis state |n⟩.
    pub fn basis(n: Outcome) -> Self {
        let mut amps = [Complex64::ZERO; 3];
        amps[n.index()] = Complex64::ONE;
        QutritState { amps }
    }

    pub fn amp(&self, n: Outcome) -> Complex64 {
        self.amps[n.index()]
    }

    pub fn amps(&self) -> &[Complex64; 3] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }
}

/// Rotation plane of one factor of the three-angle decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationPlane {
    /// Mixes |B⟩ and |C⟩ (angle θ).
    Plane23,
    /// Mixes |A⟩ and |C⟩ (angle χ).
    Plane13,
    /// Mixes |A⟩ and |B⟩ (angle φ).
    Plane12,
}

/// Three Euler-like angles (θ, χ, φ) parametrizing one evolution unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub theta: f64,
    pub chi: f64,
    pub phi: f64,
}

impl EulerAngles {
    pub fn new(theta: f64, chi: f64, phi: f64) -> Self {
        EulerAngles { theta, chi, phi }
    }

    pub fn is_finite(&self) -> bool {
        self.theta.is_finite() && self.chi.is_finite() && self.phi.is_finite()
    }
}

/// Dense 3×3 complex matrix; constructors guarantee unitarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary3 {
    m: [[Complex64; 3]; 3],
}

impl Unitary3 {
    pub fn identity() -> Self {
        let mut m = [[Complex64::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::ONE;
        }
        Unitary3 { m }
    }

    pub fn from_rows(m: [[Complex64; 3]; 3]) -> Self {
        Unitary3 { m }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Unitary3) -> Unitary3 {
        let mut out = [[Complex64::ZERO; 3]; 3];
        for (out_row, lhs_row) in out.iter_mut().zip(&self.m) {
            for (j, out_cell) in out_row.iter_mut().enumerate() {
                let mut acc = Complex64::ZERO;
                for (k, rhs_row) in rhs.m.iter().enumerate() {
                    acc += lhs_row[k] * rhs_row[j];
                }
                *out_cell = acc;
            }
        }
        Unitary3 { m: out }
    }

    pub fn apply(&self, state: &QutritState) -> QutritState {
        let mut amps = [Complex64::ZERO; 3];
        for (i, row) in self.m.iter().enumerate() {
            amps[i] = row
                .iter()
                .zip(state.amps().iter())
                .map(|(u, a)| u * a)
                .sum();
        }
        QutritState { amps }
    }

    /// Largest entrywise deviation of U†U from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Complex64::ZERO;
                for row in &self.m {
                    acc += row[i].conj() * row[j];
                }
                let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }
}

/// One factor of the printed three-matrix product: a rotation in the given
/// plane with +sin in the upper-right and −sin in the lower-left of the block.
pub fn elementary_rotation(plane: RotationPlane, angle: f64) -> Result<Unitary3> {
    if !angle.is_finite() {
        return Err(Error::invalid(format!("rotation angle must be finite, got {angle}")));
    }
    let (c, s): (Complex64, Complex64) = (angle.cos().into(), angle.sin().into());
    let o = Complex64::ZERO;
    let l = Complex64::ONE;
    let m = match plane {
        RotationPlane::Plane23 => [[l, o, o], [o, c, s], [o, -s, c]],
        RotationPlane::Plane13 => [[c, o, s], [o, l, o], [-s, o, c]],
        RotationPlane::Plane12 => [[c, s, o], [-s, c, o], [o, o, l]],
    };
    Ok(Unitary3::from_rows(m))
}

/// U(θ,χ,φ) = R23(θ)·R13(χ)·R12(φ); R23 acts last on the state.
pub fn build_unitary(angles: &EulerAngles) -> Result<Unitary3> {
    if !angles.is_finite() {
        return Err(Error::invalid(format!("angles must be finite, got {angles:?}")));
    }
    let r23 = elementary_rotation(RotationPlane::Plane23, angles.theta)?;
    let r13 = elementary_rotation(RotationPlane::Plane13, angles.chi)?;
    let r12 = elementary_rotation(RotationPlane::Plane12, angles.phi)?;
    Ok(r23.mul(&r13).mul(&r12))
}

pub fn evolve(state: &QutritState, u: &Unitary3) -> QutritState {
    u.apply(state)
}

/// (|a|², |b|², |c|²); sub-normalized states yield sub-normalized triples.
pub fn born_probs(state: &QutritState) -> [f64; 3] {
    let a = state.amps();
    [a[0].norm_sqr(), a[1].norm_sqr(), a[2].norm_sqr()]
}

/// Unambiguous measurement branch: two modes blocked, `keep` passes.
/// The post-state is left sub-normalized.
pub fn project(state: &QutritState, keep: Outcome) -> (f64, QutritState) {
    let mut amps = [Complex64::ZERO; 3];
    amps[keep.index()] = state.amp(keep);
    let post = QutritState { amps };
    (post.norm_sqr(), post)
}

/// Ambiguous measurement branch: one mode blocked, the other two pass with
/// their coherence intact. The post-state is left sub-normalized.
pub fn block(state: &QutritState, excluded: Outcome) -> (f64, QutritState) {
    let mut amps = *state.amps();
    amps[excluded.index()] = Complex64::ZERO;
    let post = QutritState { amps };
    (post.norm_sqr(), post)
}
