//! The dictionary between spinor tensors and Minkowski space.
//!
//! A four-vector (t, x, y, z) corresponds to the Hermitian matrix
//! H = [[t+z, x+iy], [x-iy, t-z]]; a single spinor xi maps onto the light
//! cone through H = sqrt2 * xi xi-dagger. Conjugation by a determinant-one
//! matrix acts on H and induces a real Lorentz transformation, two-to-one.
//! The Minkowski metric itself is the composite tensor
//! g_{AA'BB'} = eps_{AB} ceps_{A'B'}.
//!
//! Hodge duality contracts an antisymmetric composite-pair tensor with the
//! volume form, its last two pairs raised slot-wise:
//! (*F)_{ab} = 1/2 e_{ab}^{cd} F_{cd}. With the raising convention used
//! here this satisfies ** = -1, and the six building blocks split into
//! eigen-tensors: the three with a symmetric unprimed part times ceps have
//! eigenvalue -i, the three of the form eps times a symmetric primed part
//! have eigenvalue +i. [`duality_decompose`] extracts those two parts,
//! F = phi_{AB} ceps_{A'B'} + eps_{AB} cpsi_{A'B'}.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::objects::{composite_groups, volume_tensor, PaperConstants};
use crate::report::{CheckItem, VerificationReport};
use crate::scalar::{ExactScalar, Rational};
use crate::tensor::{first_mismatch, IndexSignature, Slot, SpinTensor, Variance};

/// Errors from the Minkowski-side types and maps.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MinkowskiError {
    #[error("entries must be real")]
    NotReal,
    #[error("determinant must be exactly 1")]
    DeterminantNotOne,
    #[error("matrix does not preserve the Minkowski metric")]
    NotLorentz,
    #[error("expected {expected}")]
    WrongSignature { expected: &'static str },
    #[error("tensor is not totally antisymmetric in its composite pairs")]
    NotAntisymmetric,
}

#[derive(Clone, Serialize, Deserialize)]
struct FourVectorRepr {
    t: ExactScalar,
    x: ExactScalar,
    y: ExactScalar,
    z: ExactScalar,
}

/// A real four-vector with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FourVectorRepr", into = "FourVectorRepr")]
pub struct FourVector {
    t: ExactScalar,
    x: ExactScalar,
    y: ExactScalar,
    z: ExactScalar,
}

impl FourVector {
    pub fn new(
        t: ExactScalar,
        x: ExactScalar,
        y: ExactScalar,
        z: ExactScalar,
    ) -> Result<Self, MinkowskiError> {
        if ![&t, &x, &y, &z].iter().all(|v| v.is_real()) {
            return Err(MinkowskiError::NotReal);
        }
        Ok(Self { t, x, y, z })
    }

    pub fn t(&self) -> &ExactScalar {
        &self.t
    }

    pub fn x(&self) -> &ExactScalar {
        &self.x
    }

    pub fn y(&self) -> &ExactScalar {
        &self.y
    }

    pub fn z(&self) -> &ExactScalar {
        &self.z
    }

    /// The Minkowski norm t^2 - x^2 - y^2 - z^2.
    pub fn norm_sq(&self) -> ExactScalar {
        &self.t * &self.t - &self.x * &self.x - &self.y * &self.y - &self.z * &self.z
    }
}

impl TryFrom<FourVectorRepr> for FourVector {
    type Error = MinkowskiError;

    fn try_from(r: FourVectorRepr) -> Result<Self, Self::Error> {
        Self::new(r.t, r.x, r.y, r.z)
    }
}

impl From<FourVector> for FourVectorRepr {
    fn from(v: FourVector) -> Self {
        Self { t: v.t, x: v.x, y: v.y, z: v.z }
    }
}

/// General complex 2x2 matrix over the exact scalar ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix2 {
    entries: [[ExactScalar; 2]; 2],
}

impl Matrix2 {
    pub fn new(entries: [[ExactScalar; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        Self::new([
            [ExactScalar::one(), ExactScalar::zero()],
            [ExactScalar::zero(), ExactScalar::one()],
        ])
    }

    pub fn entry(&self, row: usize, col: usize) -> &ExactScalar {
        &self.entries[row][col]
    }

    pub fn det(&self) -> ExactScalar {
        &self.entries[0][0] * &self.entries[1][1] - &self.entries[0][1] * &self.entries[1][0]
    }

    pub fn mul(&self, other: &Matrix2) -> Matrix2 {
        let mut out = [
            [ExactScalar::zero(), ExactScalar::zero()],
            [ExactScalar::zero(), ExactScalar::zero()],
        ];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = &self.entries[i][0] * &other.entries[0][j]
                    + &self.entries[i][1] * &other.entries[1][j];
            }
        }
        Matrix2::new(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Matrix2 {
        Matrix2::new([
            [self.entries[0][0].conjugate(), self.entries[1][0].conjugate()],
            [self.entries[0][1].conjugate(), self.entries[1][1].conjugate()],
        ])
    }

    pub fn negate(&self) -> Matrix2 {
        Matrix2::new([
            [-&self.entries[0][0], -&self.entries[0][1]],
            [-&self.entries[1][0], -&self.entries[1][1]],
        ])
    }
}

/// A 2x2 matrix with determinant exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SL2CMatrix {
    inner: Matrix2,
}

impl SL2CMatrix {
    pub fn new(m: Matrix2) -> Result<Self, MinkowskiError> {
        if m.det() != ExactScalar::one() {
            return Err(MinkowskiError::DeterminantNotOne);
        }
        Ok(Self { inner: m })
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.inner
    }

    /// The other preimage of the same Lorentz transformation.
    pub fn negate(&self) -> SL2CMatrix {
        SL2CMatrix { inner: self.inner.negate() }
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct LorentzRepr(Vec<ExactScalar>);

/// A real 4x4 matrix validated to preserve diag(1,-1,-1,-1) exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LorentzRepr", into = "LorentzRepr")]
pub struct LorentzMatrix {
    rows: [[ExactScalar; 4]; 4],
}

impl LorentzMatrix {
    pub fn new(rows: [[ExactScalar; 4]; 4]) -> Result<Self, MinkowskiError> {
        if !rows.iter().flatten().all(ExactScalar::is_real) {
            return Err(MinkowskiError::NotReal);
        }
        let candidate = Self { rows };
        if !candidate.preserves_metric() {
            return Err(MinkowskiError::NotLorentz);
        }
        Ok(candidate)
    }

    pub fn identity() -> Self {
        let mut rows: [[ExactScalar; 4]; 4] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = ExactScalar::one();
        }
        Self { rows }
    }

    pub fn entry(&self, row: usize, col: usize) -> &ExactScalar {
        &self.rows[row][col]
    }

    pub fn mul(&self, other: &LorentzMatrix) -> LorentzMatrix {
        let mut rows: [[ExactScalar; 4]; 4] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = ExactScalar::zero();
                for k in 0..4 {
                    acc = acc + &self.rows[i][k] * &other.rows[k][j];
                }
                *cell = acc;
            }
        }
        // A product of metric-preserving matrices preserves the metric.
        LorentzMatrix { rows }
    }

    fn preserves_metric(&self) -> bool {
        let eta = |k: usize| {
            if k == 0 {
                ExactScalar::one()
            } else {
                -ExactScalar::one()
            }
        };
        for i in 0..4 {
            for j in 0..4 {
                // (Lambda^T G Lambda)_{ij} = sum_k Lambda_{ki} eta_k Lambda_{kj}
                let mut acc = ExactScalar::zero();
                for k in 0..4 {
                    acc = acc + eta(k) * &self.rows[k][i] * &self.rows[k][j];
                }
                let expected = if i == j { eta(i) } else { ExactScalar::zero() };
                if acc != expected {
                    return false;
                }
            }
        }
        true
    }
}

impl TryFrom<LorentzRepr> for LorentzMatrix {
    type Error = MinkowskiError;

    fn try_from(r: LorentzRepr) -> Result<Self, Self::Error> {
        if r.0.len() != 16 {
            return Err(MinkowskiError::NotLorentz);
        }
        let mut it = r.0.into_iter();
        let mut rows: [[ExactScalar; 4]; 4] = Default::default();
        for row in rows.iter_mut() {
            for cell in row.iter_mut() {
                *cell = it.next().expect("sixteen entries");
            }
        }
        Self::new(rows)
    }
}

impl From<LorentzMatrix> for LorentzRepr {
    fn from(m: LorentzMatrix) -> Self {
        LorentzRepr(m.rows.into_iter().flatten().collect())
    }
}

/// The Hermitian coordinate matrix of (t, x, y, z):
/// [[t+z, x+iy], [x-iy, t-z]].
fn hermitian_basis() -> [Matrix2; 4] {
    let one = ExactScalar::one;
    let zero = ExactScalar::zero;
    let i = ExactScalar::i;
    [
        Matrix2::new([[one(), zero()], [zero(), one()]]),
        Matrix2::new([[zero(), one()], [one(), zero()]]),
        Matrix2::new([[zero(), i()], [-i(), zero()]]),
        Matrix2::new([[one(), zero()], [zero(), -one()]]),
    ]
}

/// Read (t, x, y, z) back off a Hermitian matrix.
fn coordinate_reads(h: &Matrix2) -> [ExactScalar; 4] {
    let half = ExactScalar::ratio(1, 2);
    let t = (h.entry(0, 0) + h.entry(1, 1)) * &half;
    let x = (h.entry(0, 1) + h.entry(1, 0)) * &half;
    // y = (H01 - H10) / (2i) = -i/2 (H01 - H10)
    let y = (h.entry(0, 1) - h.entry(1, 0)) * ExactScalar::ratio(-1, 2) * ExactScalar::i();
    let z = (h.entry(0, 0) - h.entry(1, 1)) * &half;
    [t, x, y, z]
}

/// Map a single upper unprimed spinor onto the light cone:
/// H = sqrt2 * xi xi-dagger, then read the coordinates. The result always
/// satisfies t^2 - x^2 - y^2 - z^2 = det H = 0.
pub fn spinor_to_null_vector(xi: &SpinTensor) -> Result<FourVector, MinkowskiError> {
    if xi.signature().slots() != [Slot::up(false)] {
        return Err(MinkowskiError::WrongSignature {
            expected: "a single upper unprimed slot",
        });
    }
    let comp = |a: u8| xi.component(&[a]).expect("single slot").clone();
    let sqrt2 = ExactScalar::sqrt2();
    let entry = |a: u8, b: u8| &sqrt2 * comp(a) * comp(b).conjugate();
    let h = Matrix2::new([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]);
    let [t, x, y, z] = coordinate_reads(&h);
    FourVector::new(t, x, y, z)
}

/// The metric g_{AA'BB'} = eps_{AB} ceps_{A'B'} with interleaved slots.
pub fn metric_tensor(c: &PaperConstants) -> SpinTensor {
    c.eps_lower
        .tensor_product(&c.eps_bar_lower)
        .expect("four slots")
        .permute_slots(&[0, 2, 1, 3])
        .expect("valid permutation")
}

/// Full contraction g(v, w) of the metric with two upper (A, A') vectors.
fn metric_pairing(g: &SpinTensor, v: &SpinTensor, w: &SpinTensor) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (tuple, gc) in g.enumerate() {
        let vc = v.component(&tuple[..2]).expect("pair slots");
        let wc = w.component(&tuple[2..]).expect("pair slots");
        acc = acc + gc * vc * wc;
    }
    acc
}

/// Gram matrix of the four real direction vectors (upper variant) under
/// the metric.
pub fn gram_of_real_basis(c: &PaperConstants) -> [[ExactScalar; 4]; 4] {
    let g = metric_tensor(c);
    let v = crate::objects::real_basis_upper(c);
    let mut out: [[ExactScalar; 4]; 4] = Default::default();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = metric_pairing(&g, &v[i], &v[j]);
        }
    }
    out
}

/// Inertia of a real symmetric matrix of exact scalars (positive,
/// negative, zero diagonal counts after congruence diagonalization).
pub fn real_matrix_signature(
    m: &[[ExactScalar; 4]; 4],
) -> Result<(usize, usize, usize), MinkowskiError> {
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(4);
    for row in m {
        let mut out = Vec::with_capacity(4);
        for cell in row {
            if !cell.is_rational() {
                return Err(MinkowskiError::NotReal);
            }
            out.push(cell.coords()[0].clone());
        }
        rows.push(out);
    }
    crate::rank::symmetric_signature(&rows).map_err(|_| MinkowskiError::NotLorentz)
}

/// The induced Lorentz transformation of a determinant-one matrix:
/// the columns are the coordinate reads of L H_j L-dagger over the
/// Hermitian coordinate basis. Two-to-one: L and -L give the same result.
pub fn sl2c_to_lorentz(l: &SL2CMatrix) -> LorentzMatrix {
    let mut rows: [[ExactScalar; 4]; 4] = Default::default();
    for (j, h) in hermitian_basis().iter().enumerate() {
        let conjugated = l.matrix().mul(h).mul(&l.matrix().dagger());
        let col = coordinate_reads(&conjugated);
        for (i, value) in col.into_iter().enumerate() {
            rows[i][j] = value;
        }
    }
    LorentzMatrix::new(rows)
        .expect("conjugation by a determinant-one matrix preserves the metric")
}

/// The transformed epsilon LHS_{CD} = eps_{AB} L^A_C L^B_D. Equals
/// det(L) * eps_{CD}, so it matches eps exactly when det L = 1.
pub fn epsilon_transform(c: &PaperConstants, l: &Matrix2) -> SpinTensor {
    SpinTensor::from_fn(c.eps_lower.signature().clone(), |t| {
        let (cc, dd) = (t[0] as usize, t[1] as usize);
        let mut acc = ExactScalar::zero();
        for a in 0..2u8 {
            for b in 0..2u8 {
                acc = acc
                    + c.eps_lower.component(&[a, b]).expect("two slots")
                        * l.entry(a as usize, cc)
                        * l.entry(b as usize, dd);
            }
        }
        acc
    })
}

/// Component-wise report on whether a matrix leaves epsilon invariant;
/// passes exactly when the determinant is 1.
pub fn epsilon_invariance_check(c: &PaperConstants, l: &Matrix2) -> VerificationReport {
    let transformed = epsilon_transform(c, l);
    let mut report = VerificationReport::new();
    report.push(CheckItem::from_outcome(
        "epsilon invariant under the transformation".to_string(),
        first_mismatch(&transformed, &c.eps_lower),
    ));
    report
}

fn require_antisymmetric_pair_tensor(f: &SpinTensor) -> Result<(), MinkowskiError> {
    let expected: Vec<Slot> = vec![
        Slot::down(false),
        Slot::down(true),
        Slot::down(false),
        Slot::down(true),
    ];
    if f.signature().slots() != expected.as_slice() {
        return Err(MinkowskiError::WrongSignature {
            expected: "an interleaved lower (A, A', B, B') tensor",
        });
    }
    let antisymmetric = f
        .is_totally_antisymmetric(&composite_groups(2))
        .expect("valid groups")
        .passed();
    if !antisymmetric {
        return Err(MinkowskiError::NotAntisymmetric);
    }
    Ok(())
}

/// Hodge dual (*F)_{ab} = 1/2 e_{ab}^{cd} F_{cd}: contraction with the
/// volume form, last two composite pairs raised slot-wise. Satisfies
/// ** = -1.
pub fn hodge_dual(c: &PaperConstants, f: &SpinTensor) -> Result<SpinTensor, MinkowskiError> {
    require_antisymmetric_pair_tensor(f)?;
    let mut e_up = volume_tensor(c);
    for slot in 4..8 {
        e_up = e_up.raise_slot(slot).expect("lower volume slot");
    }
    let half = ExactScalar::ratio(1, 2);
    Ok(SpinTensor::from_fn(f.signature().clone(), |ab| {
        let mut acc = ExactScalar::zero();
        let mut full = [0u8; 8];
        full[..4].copy_from_slice(ab);
        for lin in 0..16u8 {
            for (k, slot) in full[4..].iter_mut().enumerate() {
                *slot = (lin >> (3 - k)) & 1;
            }
            acc = acc
                + e_up.component(&full).expect("eight slots")
                    * f.component(&full[4..]).expect("four slots");
        }
        acc * &half
    }))
}

/// Split an antisymmetric composite-pair tensor into its two symmetric
/// halves: F = phi_{AB} ceps_{A'B'} + eps_{AB} cpsi_{A'B'}. Returns
/// (phi, cpsi); for real F, cpsi is the conjugate of phi.
pub fn duality_decompose(
    c: &PaperConstants,
    f: &SpinTensor,
) -> Result<(SpinTensor, SpinTensor), MinkowskiError> {
    require_antisymmetric_pair_tensor(f)?;
    let half = ExactScalar::ratio(1, 2);
    let phi_sig = IndexSignature::new(vec![Slot::down(false); 2]).expect("two slots");
    let psi_sig = IndexSignature::new(vec![Slot::down(true); 2]).expect("two slots");
    // phi_{AB} = 1/2 F_{AA'BB'} ceps^{A'B'}
    let phi = SpinTensor::from_fn(phi_sig, |t| {
        let (a, b) = (t[0], t[1]);
        let mut acc = ExactScalar::zero();
        for ap in 0..2u8 {
            for bp in 0..2u8 {
                acc = acc
                    + f.component(&[a, ap, b, bp]).expect("four slots")
                        * c.eps_bar_upper.component(&[ap, bp]).expect("two slots");
            }
        }
        acc * &half
    });
    // cpsi_{A'B'} = 1/2 F_{AA'BB'} eps^{AB}
    let psi_bar = SpinTensor::from_fn(psi_sig, |t| {
        let (ap, bp) = (t[0], t[1]);
        let mut acc = ExactScalar::zero();
        for a in 0..2u8 {
            for b in 0..2u8 {
                acc = acc
                    + f.component(&[a, ap, b, bp]).expect("four slots")
                        * c.eps_upper.component(&[a, b]).expect("two slots");
            }
        }
        acc * &half
    });
    Ok((phi, psi_bar))
}

/// Rebuild F = phi_{AB} ceps_{A'B'} + eps_{AB} cpsi_{A'B'} from the two
/// symmetric parts.
pub fn recompose(
    c: &PaperConstants,
    phi: &SpinTensor,
    psi_bar: &SpinTensor,
) -> Result<SpinTensor, MinkowskiError> {
    if phi.signature().slots() != [Slot::down(false); 2] {
        return Err(MinkowskiError::WrongSignature {
            expected: "a two-slot lower unprimed tensor",
        });
    }
    if psi_bar.signature().slots() != [Slot::down(true); 2] {
        return Err(MinkowskiError::WrongSignature {
            expected: "a two-slot lower primed tensor",
        });
    }
    let sig = IndexSignature::new(vec![
        Slot::down(false),
        Slot::down(true),
        Slot::down(false),
        Slot::down(true),
    ])
    .expect("four slots");
    Ok(SpinTensor::from_fn(sig, |t| {
        let (a, ap, b, bp) = (t[0], t[1], t[2], t[3]);
        phi.component(&[a, b]).expect("two slots")
            * c.eps_bar_lower.component(&[ap, bp]).expect("two slots")
            + c.eps_lower.component(&[a, b]).expect("two slots")
                * psi_bar.component(&[ap, bp]).expect("two slots")
    }))
}

fn random_small_rational<R: Rng>(rng: &mut R) -> Rational {
    let numer: i64 = rng.gen_range(-10..=10);
    let denom: i64 = rng.gen_range(1..=10);
    Rational::new(numer.into(), denom.into())
}

fn random_nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = random_small_rational(rng);
        if !num::Zero::is_zero(&q) {
            return q;
        }
    }
}

/// A random single-slot upper spinor with small Gaussian-rational
/// components (numerators and denominators bounded by 10).
pub fn random_spinor<R: Rng>(rng: &mut R) -> SpinTensor {
    let mut component = || {
        ExactScalar::new(
            random_small_rational(rng),
            Rational::from_integer(0.into()),
            random_small_rational(rng),
            Rational::from_integer(0.into()),
        )
    };
    let c0 = component();
    let c1 = component();
    SpinTensor::new(
        IndexSignature::new(vec![Slot::up(false)]).expect("one slot"),
        vec![c0, c1],
    )
    .expect("two components")
}

/// A random determinant-one matrix: a word of up to six elementary
/// factors (upper/lower shears with small rational or small Gaussian
/// parameters, and diagonal matrices diag(a, 1/a)), so the determinant is
/// exactly 1 by construction.
pub fn random_sl2c<R: Rng>(rng: &mut R) -> SL2CMatrix {
    let mut m = Matrix2::identity();
    let length = rng.gen_range(1..=6);
    for _ in 0..length {
        let factor = match rng.gen_range(0..3) {
            0 => {
                // upper shear [[1, q], [0, 1]], q possibly complex
                let q = ExactScalar::new(
                    random_small_rational(rng),
                    Rational::from_integer(0.into()),
                    random_small_rational(rng),
                    Rational::from_integer(0.into()),
                );
                Matrix2::new([
                    [ExactScalar::one(), q],
                    [ExactScalar::zero(), ExactScalar::one()],
                ])
            }
            1 => {
                // lower shear [[1, 0], [q, 1]]
                let q = ExactScalar::new(
                    random_small_rational(rng),
                    Rational::from_integer(0.into()),
                    random_small_rational(rng),
                    Rational::from_integer(0.into()),
                );
                Matrix2::new([
                    [ExactScalar::one(), ExactScalar::zero()],
                    [q, ExactScalar::one()],
                ])
            }
            _ => {
                // diag(a, 1/a) with a a small nonzero rational
                let a = ExactScalar::from_rational(random_nonzero_rational(rng));
                let inv = a.inverse().expect("nonzero");
                Matrix2::new([
                    [a, ExactScalar::zero()],
                    [ExactScalar::zero(), inv],
                ])
            }
        };
        m = m.mul(&factor);
    }
    SL2CMatrix::new(m).expect("products of determinant-one factors")
}

/// Upper/lower variance sanity for tensors fed to the duality maps.
pub fn is_lower_pair_tensor(f: &SpinTensor) -> bool {
    f.slot_count() == 4
        && f.signature().slots().iter().enumerate().all(|(k, s)| {
            s.variance == Variance::Down && s.primed == (k % 2 == 1)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::{
        duality_building_blocks, is_real_composite, lambda2_basis, real_basis_lower,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn rat(p: i64, q: i64) -> ExactScalar {
        ExactScalar::ratio(p, q)
    }

    fn spinor(c0: ExactScalar, c1: ExactScalar) -> SpinTensor {
        SpinTensor::new(
            IndexSignature::new(vec![Slot::up(false)]).unwrap(),
            vec![c0, c1],
        )
        .unwrap()
    }

    #[test]
    fn the_standard_spinor_maps_to_a_null_ray() {
        let c = PaperConstants::new();
        let v = spinor_to_null_vector(&c.o_up).unwrap();
        let half_sqrt2 = ExactScalar::sqrt2() * rat(1, 2);
        assert_eq!(v.t(), &half_sqrt2);
        assert_eq!(v.x(), &int(0));
        assert_eq!(v.y(), &int(0));
        assert_eq!(v.z(), &half_sqrt2);
        assert!(v.norm_sq().is_zero());
    }

    #[test]
    fn every_spinor_maps_into_the_light_cone() {
        let zero = spinor(int(0), int(0));
        let v = spinor_to_null_vector(&zero).unwrap();
        assert_eq!(v, FourVector::new(int(0), int(0), int(0), int(0)).unwrap());
        let xi = spinor(int(1) + ExactScalar::i(), rat(3, 2) - int(2) * ExactScalar::i());
        assert!(spinor_to_null_vector(&xi).unwrap().norm_sq().is_zero());
        let c = PaperConstants::new();
        assert_eq!(
            spinor_to_null_vector(&c.o_low).unwrap_err(),
            MinkowskiError::WrongSignature { expected: "a single upper unprimed slot" }
        );
    }

    #[test]
    fn metric_values_on_the_real_basis() {
        let c = PaperConstants::new();
        let g = metric_tensor(&c);
        assert_eq!(g.component(&[0, 0, 1, 1]), Some(&int(1)));
        // Symmetric under the composite pair swap.
        let swapped = g.permute_slots(&[2, 3, 0, 1]).unwrap();
        assert_eq!(swapped, g);
        let gram = gram_of_real_basis(&c);
        let expected: [[i64; 4]; 4] = [
            [0, 0, 0, 1],
            [0, -2, 0, 0],
            [0, 0, -2, 0],
            [1, 0, 0, 0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(gram[i][j], int(expected[i][j]), "entry ({i},{j})");
            }
        }
        assert_eq!(real_matrix_signature(&gram).unwrap(), (1, 3, 0));
    }

    #[test]
    fn shear_transformation_is_the_expected_null_rotation() {
        let shear = SL2CMatrix::new(Matrix2::new([
            [int(1), int(1)],
            [int(0), int(1)],
        ]))
        .unwrap();
        let lam = sl2c_to_lorentz(&shear);
        let expected = [
            [rat(3, 2), int(1), int(0), rat(-1, 2)],
            [int(1), int(1), int(0), int(-1)],
            [int(0), int(0), int(1), int(0)],
            [rat(1, 2), int(1), int(0), rat(1, 2)],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(lam.entry(i, j), &expected[i][j], "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn lorentz_map_is_a_two_to_one_homomorphism() {
        let a = SL2CMatrix::new(Matrix2::new([[int(1), int(1)], [int(0), int(1)]])).unwrap();
        let b = SL2CMatrix::new(Matrix2::new([
            [int(1), int(0)],
            [rat(1, 2) + ExactScalar::i(), int(1)],
        ]))
        .unwrap();
        let ab = SL2CMatrix::new(a.matrix().mul(b.matrix())).unwrap();
        assert_eq!(
            sl2c_to_lorentz(&ab),
            sl2c_to_lorentz(&a).mul(&sl2c_to_lorentz(&b))
        );
        assert_eq!(sl2c_to_lorentz(&a.negate()), sl2c_to_lorentz(&a));
        assert_eq!(sl2c_to_lorentz(&SL2CMatrix::new(Matrix2::identity()).unwrap()),
            LorentzMatrix::identity());
    }

    #[test]
    fn epsilon_invariance_separates_determinant_one() {
        let c = PaperConstants::new();
        let shear = Matrix2::new([[int(1), rat(3, 7)], [int(0), int(1)]]);
        assert!(epsilon_invariance_check(&c, &shear).passed());
        assert!(epsilon_invariance_check(&c, &Matrix2::identity()).passed());
        let diag21 = Matrix2::new([[int(2), int(0)], [int(0), int(1)]]);
        let report = epsilon_invariance_check(&c, &diag21);
        assert!(!report.passed());
        // The transformed epsilon is det * eps: (0,1) entry becomes 2.
        let transformed = epsilon_transform(&c, &diag21);
        assert_eq!(transformed.component(&[0, 1]), Some(&int(2)));
        assert_eq!(diag21.det(), int(2));
    }

    #[test]
    fn hodge_squares_to_minus_one_on_the_basis() {
        let c = PaperConstants::new();
        for named in lambda2_basis(&c) {
            let twice = hodge_dual(&c, &hodge_dual(&c, &named.tensor).unwrap()).unwrap();
            assert_eq!(twice, named.tensor.negate(), "** != -1 on {}", named.name);
        }
    }

    #[test]
    fn building_blocks_are_hodge_eigentensors() {
        let c = PaperConstants::new();
        let blocks = duality_building_blocks(&c);
        let minus_i = -ExactScalar::i();
        let plus_i = ExactScalar::i();
        for (k, named) in blocks.iter().enumerate() {
            let expected = if k < 3 { &minus_i } else { &plus_i };
            let dual = hodge_dual(&c, &named.tensor).unwrap();
            assert_eq!(
                dual,
                named.tensor.scale(expected),
                "wrong eigenvalue for {}",
                named.name
            );
        }
    }

    #[test]
    fn hodge_rejects_non_antisymmetric_input() {
        let c = PaperConstants::new();
        let g = metric_tensor(&c);
        assert_eq!(
            hodge_dual(&c, &g).unwrap_err(),
            MinkowskiError::NotAntisymmetric
        );
        assert_eq!(
            hodge_dual(&c, &c.eps_lower).unwrap_err(),
            MinkowskiError::WrongSignature {
                expected: "an interleaved lower (A, A', B, B') tensor"
            }
        );
    }

    #[test]
    fn decomposition_round_trips_and_is_symmetric() {
        let c = PaperConstants::new();
        for named in lambda2_basis(&c) {
            let (phi, psi_bar) = duality_decompose(&c, &named.tensor).unwrap();
            // Both parts symmetric.
            assert_eq!(phi.permute_slots(&[1, 0]).unwrap(), phi);
            assert_eq!(psi_bar.permute_slots(&[1, 0]).unwrap(), psi_bar);
            // Real input: the primed part is the conjugate of the unprimed.
            assert!(is_real_composite(&named.tensor).unwrap());
            assert_eq!(phi.conjugate(), psi_bar);
            // Exact reconstruction.
            assert_eq!(recompose(&c, &phi, &psi_bar).unwrap(), named.tensor);
        }
    }

    #[test]
    fn first_basis_element_decomposes_into_spinor_squares() {
        let c = PaperConstants::new();
        let first = &lambda2_basis(&c)[0].tensor;
        let (phi, psi_bar) = duality_decompose(&c, first).unwrap();
        let oo = c.o_low.tensor_product(&c.o_low).unwrap();
        assert_eq!(phi, oo);
        assert_eq!(psi_bar, oo.conjugate());
    }

    #[test]
    fn random_generators_have_the_advertised_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let l = random_sl2c(&mut rng);
            assert_eq!(l.matrix().det(), int(1));
            // Constructing the Lorentz image revalidates metric preservation.
            let _ = sl2c_to_lorentz(&l);
            let xi = random_spinor(&mut rng);
            assert!(spinor_to_null_vector(&xi).unwrap().norm_sq().is_zero());
        }
        let bad = Matrix2::new([[int(2), int(0)], [int(0), int(1)]]);
        assert_eq!(
            SL2CMatrix::new(bad).unwrap_err(),
            MinkowskiError::DeterminantNotOne
        );
    }

    #[test]
    fn four_vector_and_lorentz_serde() {
        let v = FourVector::new(rat(1, 2), int(0), ExactScalar::sqrt2(), int(-3)).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"t": "1/2", "x": "0", "y": "sqrt2", "z": "-3"})
        );
        let back: FourVector = serde_json::from_value(json).unwrap();
        assert_eq!(back, v);
        assert!(FourVector::new(ExactScalar::i(), int(0), int(0), int(0)).is_err());
        let bad = serde_json::json!({"t": "I", "x": "0", "y": "0", "z": "0"});
        assert!(serde_json::from_value::<FourVector>(bad).is_err());

        let id = LorentzMatrix::identity();
        let json = serde_json::to_value(&id).unwrap();
        let flat = json.as_array().unwrap();
        assert_eq!(flat.len(), 16);
        assert_eq!(flat[0], "1");
        assert_eq!(flat[1], "0");
        let back: LorentzMatrix = serde_json::from_value(json).unwrap();
        assert_eq!(back, id);
        // A non-Lorentz matrix is rejected on deserialization.
        let mut entries = vec!["0"; 16];
        entries[0] = "2";
        assert!(serde_json::from_value::<LorentzMatrix>(serde_json::json!(entries)).is_err());
    }

    #[test]
    fn real_basis_is_real_and_has_the_direction_signature() {
        let c = PaperConstants::new();
        for u in real_basis_lower(&c) {
            assert!(is_real_composite(&u).unwrap());
            assert_eq!(u.signature().slots(), [Slot::down(false), Slot::down(true)]);
        }
        // The two-pair shape test used by the duality maps.
        assert!(is_lower_pair_tensor(&metric_tensor(&c)));
        assert!(!is_lower_pair_tensor(&c.eps_lower));
    }
}
