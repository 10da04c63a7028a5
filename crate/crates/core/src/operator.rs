//! Gate observables with spectrum {+1, -1}, their eigenframes, the two Bell
//! states, and lifts of one-qubit gates to the pair space.
//!
//! The one-qubit basis is h = {h1, h2}, realized as the standard coordinate
//! basis: a vector (a, b) means a·h1 + b·h2. The pair space uses the product
//! basis in the fixed order (h1⊗h1, h1⊗h2, h2⊗h1, h2⊗h2).

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

/// How far an angle may overshoot a domain endpoint and still be accepted:
/// covers decimal-rounded constants such as 3.1415927 for π. Accepted
/// overshoots are clamped back to the endpoint; anything farther out is
/// rejected. Angles are never wrapped by a period — a caller handing in 2π+μ
/// has a bug that wrapping would mask.
pub const ANGLE_SLACK: f64 = 1e-6;

pub(crate) fn clamp_into(name: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    if value >= min - ANGLE_SLACK && value <= max + ANGLE_SLACK {
        Ok(value.clamp(min, max))
    } else {
        Err(Error::AngleOutOfRange {
            name,
            value,
            min,
            max,
        })
    }
}

/// Validate a polar angle into [0, π].
pub(crate) fn polar_angle(name: &'static str, value: f64) -> Result<f64> {
    clamp_into(name, value, 0.0, PI)
}

/// Validate an azimuthal angle into [0, 2π). The upper endpoint is excluded,
/// so an accepted overshoot lands just below it instead of wrapping to 0.
fn azimuth_angle(name: &'static str, value: f64) -> Result<f64> {
    let v = clamp_into(name, value, 0.0, TAU)?;
    Ok(if v >= TAU {
        f64::from_bits(TAU.to_bits() - 1)
    } else {
        v
    })
}

/// Polar and azimuthal parameters of one gate: `mu` ∈ [0, π], `eta` ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateAngles {
    mu: f64,
    eta: f64,
}

impl GateAngles {
    /// Rejects out-of-range angles, naming the offending field.
    pub fn new(mu: f64, eta: f64) -> Result<Self> {
        Ok(Self {
            mu: polar_angle("mu", mu)?,
            eta: azimuth_angle("eta", eta)?,
        })
    }

    /// A gate in the x-z plane: `eta` = 0.
    pub fn polar(mu: f64) -> Result<Self> {
        Self::new(mu, 0.0)
    }

    pub fn mu(self) -> f64 {
        self.mu
    }

    pub fn eta(self) -> f64 {
        self.eta
    }
}

/// Hermitian involution
/// [[cos μ, e^{-iη} sin μ], [e^{iη} sin μ, -cos μ]]
/// with eigenvalues +1 and -1; trace 0 and determinant -1.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianGate {
    entries: Matrix2<Complex64>,
    angles: GateAngles,
}

impl HermitianGate {
    pub fn new(angles: GateAngles) -> Self {
        let diag = Complex64::new(angles.mu().cos(), 0.0);
        let off = Complex64::from_polar(angles.mu().sin(), -angles.eta());
        let entries = Matrix2::new(diag, off, off.conj(), -diag);
        Self { entries, angles }
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.entries
    }

    pub fn angles(&self) -> GateAngles {
        self.angles
    }

    /// Unit eigenvectors of this gate.
    pub fn eigenframe(&self) -> EigenFrame {
        EigenFrame::new(self.angles)
    }
}

/// Eigenvector pair of a gate:
/// u_plus = (e^{-iη} cos(μ/2), sin(μ/2)) for eigenvalue +1,
/// u_minus = (-e^{-iη} sin(μ/2), cos(μ/2)) for eigenvalue -1.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenFrame {
    u_plus: Vector2<Complex64>,
    u_minus: Vector2<Complex64>,
}

impl EigenFrame {
    pub fn new(angles: GateAngles) -> Self {
        let (sin_half, cos_half) = (angles.mu() / 2.0).sin_cos();
        let phase = Complex64::from_polar(1.0, -angles.eta());
        Self {
            u_plus: Vector2::new(phase * cos_half, Complex64::new(sin_half, 0.0)),
            u_minus: Vector2::new(-phase * sin_half, Complex64::new(cos_half, 0.0)),
        }
    }

    pub fn u_plus(&self) -> &Vector2<Complex64> {
        &self.u_plus
    }

    pub fn u_minus(&self) -> &Vector2<Complex64> {
        &self.u_minus
    }
}

/// Selector for the two Bell states: `Triplet` is the symmetric s = 0 state,
/// `Singlet` the antisymmetric s = 1 state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    Triplet,
    Singlet,
}

impl BellKind {
    pub fn from_index(s: u8) -> Result<Self> {
        match s {
            0 => Ok(Self::Triplet),
            1 => Ok(Self::Singlet),
            other => Err(Error::BadBellIndex(other)),
        }
    }

    /// 0 for the triplet-type state, 1 for the singlet.
    pub fn index(self) -> u8 {
        match self {
            Self::Triplet => 0,
            Self::Singlet => 1,
        }
    }

    /// (-1)^s, the sign carried by the swapped component of the state.
    pub fn sign(self) -> f64 {
        match self {
            Self::Triplet => 1.0,
            Self::Singlet => -1.0,
        }
    }
}

// Serialized as the bare index so JSON reports carry `0`/`1` for s.
impl serde::Serialize for BellKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.index())
    }
}

impl<'de> serde::Deserialize<'de> for BellKind {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let index = u8::deserialize(deserializer)?;
        Self::from_index(index).map_err(serde::de::Error::custom)
    }
}

/// Where a pair state came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateLabel {
    Bell(BellKind),
    Custom,
}

pub(crate) const NORM_TOLERANCE: f64 = 1e-12;

/// Unit vector in the pair space, basis order (h1⊗h1, h1⊗h2, h2⊗h1, h2⊗h2).
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    amplitudes: Vector4<Complex64>,
    label: StateLabel,
}

impl BipartiteState {
    /// The Bell state (h1⊗h2 + (-1)^s h2⊗h1) / √2.
    pub fn bell(kind: BellKind) -> Self {
        let a = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            amplitudes: Vector4::new(zero, a, a * kind.sign(), zero),
            label: StateLabel::Bell(kind),
        }
    }

    /// Arbitrary pair state; rejects amplitudes whose norm is off 1 by more
    /// than 1e-12.
    pub fn custom(amplitudes: [Complex64; 4]) -> Result<Self> {
        let amplitudes = Vector4::from(amplitudes);
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::StateNotNormalized {
                norm,
                tolerance: NORM_TOLERANCE,
            });
        }
        Ok(Self {
            amplitudes,
            label: StateLabel::Custom,
        })
    }

    pub fn amplitudes(&self) -> &Vector4<Complex64> {
        &self.amplitudes
    }

    pub fn label(&self) -> StateLabel {
        self.label
    }
}

/// Which factor of the pair a lifted observable acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Product,
}

/// A one-qubit gate embedded in the pair space: A⊗I, I⊗B, or A⊗B. All three
/// stay Hermitian involutions; left and right lifts always commute.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedObservable {
    entries: Matrix4<Complex64>,
    side: Side,
}

impl LiftedObservable {
    /// A ⊗ I: the gate acting on the left factor.
    pub fn lift_left(gate: &HermitianGate) -> Self {
        Self {
            entries: gate.matrix().kronecker(&Matrix2::identity()),
            side: Side::Left,
        }
    }

    /// I ⊗ B: the gate acting on the right factor.
    pub fn lift_right(gate: &HermitianGate) -> Self {
        Self {
            entries: Matrix2::identity().kronecker(gate.matrix()),
            side: Side::Right,
        }
    }

    /// A ⊗ B: the joint product observable. Its eigenvectors are the tensor
    /// products of the factors' eigenvectors, so the spectrum is again {+1, -1}.
    pub fn tensor_product(a: &HermitianGate, b: &HermitianGate) -> Self {
        Self {
            entries: a.matrix().kronecker(b.matrix()),
            side: Side::Product,
        }
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.entries
    }

    pub fn side(&self) -> Side {
        self.side
    }
}

/// ⟨x, y⟩ on the pair space: anti-linear (conjugated) in the first slot and
/// linear in the second. Every amplitude in this crate is taken with this
/// convention.
pub fn inner(x: &Vector4<Complex64>, y: &Vector4<Complex64>) -> Complex64 {
    x.dotc(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn max_entry_dev(actual: &Matrix2<Complex64>, expected: &Matrix2<Complex64>) -> f64 {
        (actual - expected).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn gate(mu: f64, eta: f64) -> HermitianGate {
        HermitianGate::new(GateAngles::new(mu, eta).unwrap())
    }

    #[test]
    fn gate_matches_pauli_forms() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);

        let z = Matrix2::new(one, zero, zero, -one);
        assert!(max_entry_dev(gate(0.0, 0.0).matrix(), &z) <= 1e-15);

        let x = Matrix2::new(zero, one, one, zero);
        assert!(max_entry_dev(gate(PI / 2.0, 0.0).matrix(), &x) <= 1e-15);

        let y = Matrix2::new(zero, -i, i, zero);
        assert!(max_entry_dev(gate(PI / 2.0, PI / 2.0).matrix(), &y) <= 1e-15);
    }

    #[test]
    fn angle_validation_names_the_field() {
        match GateAngles::new(-0.1, 0.0) {
            Err(Error::AngleOutOfRange { name: "mu", .. }) => {}
            other => panic!("expected mu range error, got {other:?}"),
        }
        match GateAngles::new(PI + 0.1, 0.0) {
            Err(Error::AngleOutOfRange { name: "mu", .. }) => {}
            other => panic!("expected mu range error, got {other:?}"),
        }
        match GateAngles::new(0.0, -0.1) {
            Err(Error::AngleOutOfRange { name: "eta", .. }) => {}
            other => panic!("expected eta range error, got {other:?}"),
        }
        assert!(GateAngles::new(0.0, TAU + 0.1).is_err());
        assert!(GateAngles::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    #[allow(clippy::approx_constant)] // the inexact literal is the point here
    fn boundary_overshoot_is_clamped_not_wrapped() {
        // 7-digit decimal π overshoots the domain by ~4e-8 and must work
        let a = GateAngles::new(3.1415927, 0.0).unwrap();
        assert_eq!(a.mu(), PI);
        // the azimuth domain excludes 2π: an accepted overshoot stays just below
        let b = GateAngles::new(0.0, TAU).unwrap();
        assert!(b.eta() < TAU);
        assert!(TAU - b.eta() < 1e-12);
        // far outside stays an error
        assert!(GateAngles::new(PI + 0.1, 0.0).is_err());
        assert!(GateAngles::new(0.0, TAU + 0.1).is_err());
    }

    #[test]
    fn eigenframe_trivial_cases() {
        let f = EigenFrame::new(GateAngles::polar(0.0).unwrap());
        assert!((f.u_plus() - Vector2::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))).norm() <= 1e-15);
        assert!((f.u_minus() - Vector2::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))).norm() <= 1e-15);

        let f = EigenFrame::new(GateAngles::polar(PI / 2.0).unwrap());
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert!((f.u_plus() - Vector2::new(r, r)).norm() <= 1e-15);
        assert!((f.u_minus() - Vector2::new(-r, r)).norm() <= 1e-15);
    }

    #[test]
    fn inner_product_is_antilinear_in_the_first_slot() {
        let i = Complex64::new(0.0, 1.0);
        let x = Vector4::new(
            Complex64::new(0.5, 0.1),
            Complex64::new(-0.3, 0.2),
            Complex64::new(0.0, 0.7),
            Complex64::new(0.2, -0.1),
        );
        let y = Vector4::new(
            Complex64::new(0.1, -0.4),
            Complex64::new(0.6, 0.0),
            Complex64::new(-0.2, 0.3),
            Complex64::new(0.0, 0.5),
        );
        let base = inner(&x, &y);
        assert!((inner(&(x * i), &y) - base * (-i)).norm() <= 1e-15);
        assert!((inner(&x, &(y * i)) - base * i).norm() <= 1e-15);
    }

    #[test]
    fn bell_states_match_their_definition() {
        let t = BipartiteState::bell(BellKind::Triplet);
        let s = BipartiteState::bell(BellKind::Singlet);
        for (state, sign) in [(&t, 1.0), (&s, -1.0)] {
            let a = state.amplitudes();
            assert_eq!(a[0], Complex64::new(0.0, 0.0));
            assert_eq!(a[3], Complex64::new(0.0, 0.0));
            assert_abs_diff_eq!(a[1].re, FRAC_1_SQRT_2, epsilon = 1e-15);
            assert_abs_diff_eq!(a[2].re, sign * FRAC_1_SQRT_2, epsilon = 1e-15);
            assert_abs_diff_eq!(state.amplitudes().norm(), 1.0, epsilon = 1e-12);
        }
        assert_eq!(t.label(), StateLabel::Bell(BellKind::Triplet));
        assert_eq!(BellKind::from_index(2).unwrap_err(), Error::BadBellIndex(2));
    }

    #[test]
    fn custom_state_requires_unit_norm() {
        let z = Complex64::new(0.0, 0.0);
        let half = Complex64::new(0.5, 0.0);
        assert!(BipartiteState::custom([half, half, half, half]).is_ok());
        match BipartiteState::custom([half, half, half, z]) {
            Err(Error::StateNotNormalized { .. }) => {}
            other => panic!("expected norm error, got {other:?}"),
        }
    }

    #[test]
    fn lifts_of_z_are_signed_identities() {
        let z = gate(0.0, 0.0);
        let left = LiftedObservable::lift_left(&z);
        let right = LiftedObservable::lift_right(&z);
        let expect = |signs: [f64; 4]| {
            Matrix4::from_diagonal(&Vector4::from(signs.map(|s| Complex64::new(s, 0.0))))
        };
        assert!((left.matrix() - expect([1.0, 1.0, -1.0, -1.0])).norm() <= 1e-15);
        assert!((right.matrix() - expect([1.0, -1.0, 1.0, -1.0])).norm() <= 1e-15);
        assert_eq!(left.side(), Side::Left);
        assert_eq!(right.side(), Side::Right);

        let zz = LiftedObservable::tensor_product(&z, &z);
        assert!((zz.matrix() - expect([1.0, -1.0, -1.0, 1.0])).norm() <= 1e-15);
        assert_eq!(zz.side(), Side::Product);
    }

    #[test]
    fn tensor_product_spectrum_is_plus_minus_one() {
        let a = gate(1.1, 0.4);
        let b = gate(2.3, 5.1);
        let ab = LiftedObservable::tensor_product(&a, &b);
        let mut eigenvalues: Vec<f64> = ab.matrix().symmetric_eigen().eigenvalues.iter().copied().collect();
        eigenvalues.sort_by(f64::total_cmp);
        for (got, want) in eigenvalues.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
    }

    proptest! {
        #[test]
        fn gate_invariants_hold(mu in 0.0..=PI, eta in 0.0..TAU) {
            let g = gate(mu, eta);
            let m = g.matrix();
            prop_assert!(max_entry_dev(&m.adjoint(), m) <= 1e-15);
            prop_assert!(max_entry_dev(&(m * m), &Matrix2::identity()) <= 1e-15);
            prop_assert!((m[(0, 0)] + m[(1, 1)]).norm() <= 1e-15);
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            prop_assert!((det + Complex64::new(1.0, 0.0)).norm() <= 1e-15);
        }

        #[test]
        fn eigenframe_is_an_orthonormal_eigenbasis(mu in 0.0..=PI, eta in 0.0..TAU) {
            let g = gate(mu, eta);
            let f = g.eigenframe();
            prop_assert!((f.u_plus().norm() - 1.0).abs() <= 1e-15);
            prop_assert!((f.u_minus().norm() - 1.0).abs() <= 1e-15);
            prop_assert!(f.u_plus().dotc(f.u_minus()).norm() <= 1e-15);
            prop_assert!((g.matrix() * f.u_plus() - f.u_plus()).norm() <= 1e-14);
            prop_assert!((g.matrix() * f.u_minus() + f.u_minus()).norm() <= 1e-14);
        }

        #[test]
        fn left_and_right_lifts_commute(
            mu_a in 0.0..=PI, eta_a in 0.0..TAU,
            mu_b in 0.0..=PI, eta_b in 0.0..TAU,
        ) {
            let left = LiftedObservable::lift_left(&gate(mu_a, eta_a));
            let right = LiftedObservable::lift_right(&gate(mu_b, eta_b));
            let commutator = left.matrix() * right.matrix() - right.matrix() * left.matrix();
            prop_assert!(commutator.iter().map(|z| z.norm()).fold(0.0, f64::max) <= 1e-14);
            // each lift is itself a Hermitian involution with zero trace
            for lifted in [&left, &right] {
                let m = lifted.matrix();
                prop_assert!((m.adjoint() - m).iter().map(|z| z.norm()).fold(0.0, f64::max) <= 1e-15);
                let square = m * m - Matrix4::<Complex64>::identity();
                prop_assert!(square.iter().map(|z| z.norm()).fold(0.0, f64::max) <= 1e-15);
                prop_assert!(m.trace().norm() <= 1e-15);
            }
        }

        #[test]
        fn tensor_vectors_are_joint_eigenvectors(
            mu_a in 0.0..=PI, eta_a in 0.0..TAU,
            mu_b in 0.0..=PI, eta_b in 0.0..TAU,
        ) {
            let (a, b) = (gate(mu_a, eta_a), gate(mu_b, eta_b));
            let (fa, fb) = (a.eigenframe(), b.eigenframe());
            let ab = LiftedObservable::tensor_product(&a, &b);
            let left = LiftedObservable::lift_left(&a);
            let right = LiftedObservable::lift_right(&b);

            let vectors = [
                (fa.u_plus().kronecker(fb.u_plus()), 1.0, 1.0),
                (fa.u_plus().kronecker(fb.u_minus()), 1.0, -1.0),
                (fa.u_minus().kronecker(fb.u_plus()), -1.0, 1.0),
                (fa.u_minus().kronecker(fb.u_minus()), -1.0, -1.0),
            ];
            for (v, la, lb) in &vectors {
                let scale = |l: f64| Complex64::new(l, 0.0);
                prop_assert!((ab.matrix() * v - v * scale(la * lb)).norm() <= 1e-14);
                prop_assert!((left.matrix() * v - v * scale(*la)).norm() <= 1e-14);
                prop_assert!((right.matrix() * v - v * scale(*lb)).norm() <= 1e-14);
            }
            // the four tensor vectors are an orthonormal set
            for (i, (v, _, _)) in vectors.iter().enumerate() {
                for (j, (w, _, _)) in vectors.iter().enumerate() {
                    let overlap = inner(v, w).norm();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((overlap - expected).abs() <= 1e-14);
                }
            }
        }
    }
}
