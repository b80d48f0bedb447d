//! Dense two-spinor tensors and the index operations on them.
//!
//! A tensor is an ordered signature of slots (each unprimed or primed,
//! upper or lower) together with one exact scalar per index tuple. Index
//! values range over {0, 1}; components are stored row-major with the
//! first slot most significant, so the component at tuple (i1, ..., in)
//! sits at linear position sum(i_k * 2^(n-k)). At most eight slots are
//! supported, which covers everything up to the rank-four volume tensor.
//!
//! Conventions: the antisymmetric epsilon form has eps_{01} = +1, lowering
//! acts on the second epsilon slot (xi_A = xi^B eps_{BA}, so component-wise
//! (s0, s1) -> (-s1, s0)) and raising is its exact inverse. Primed slots
//! use the conjugate epsilon, which has the same numeric components.

use serde::{Deserialize, Serialize};

use crate::report::{CheckItem, Counterexample, VerificationReport};
use crate::scalar::ExactScalar;

/// Maximum number of slots a tensor may carry.
pub const MAX_SLOTS: usize = 8;

/// Errors produced by tensor construction and index operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("expected {expected} components for the signature, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("{got} slots requested; at most {MAX_SLOTS} are supported")]
    TooManySlots { got: usize },
    #[error("operand signatures differ")]
    SignatureMismatch,
    #[error("{perm:?} is not a permutation of the {slots} slot positions")]
    InvalidPermutation { perm: Vec<usize>, slots: usize },
    #[error("slot {slot} out of range for {slots} slots")]
    SlotOutOfRange { slot: usize, slots: usize },
    #[error("cannot contract slot {p} with slot {q}: need distinct slots of equal primedness and opposite variance")]
    IncompatibleContraction { p: usize, q: usize },
    #[error("slot {slot} does not have the variance required by this operation")]
    WrongVariance { slot: usize },
    #[error("invalid composite groups: {reason}")]
    InvalidGroups { reason: String },
    #[error("wedge factors must be non-scalar tensors sharing one signature")]
    MixedWedgeFactors,
}

/// Upper (contravariant) or lower (covariant) index position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Up,
    Down,
}

/// One index slot: primed or unprimed, upper or lower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub primed: bool,
    pub variance: Variance,
}

impl Slot {
    pub fn up(primed: bool) -> Self {
        Self { primed, variance: Variance::Up }
    }

    pub fn down(primed: bool) -> Self {
        Self { primed, variance: Variance::Down }
    }
}

/// Ordered list of slots; limited to [`MAX_SLOTS`] entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Slot>", into = "Vec<Slot>")]
pub struct IndexSignature {
    slots: Vec<Slot>,
}

impl IndexSignature {
    pub fn new(slots: Vec<Slot>) -> Result<Self, TensorError> {
        if slots.len() > MAX_SLOTS {
            return Err(TensorError::TooManySlots { got: slots.len() });
        }
        Ok(Self { slots })
    }

    pub fn empty() -> Self {
        Self { slots: Vec::new() }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Number of components a tensor with this signature stores.
    pub fn component_count(&self) -> usize {
        1 << self.slots.len()
    }
}

impl TryFrom<Vec<Slot>> for IndexSignature {
    type Error = TensorError;

    fn try_from(slots: Vec<Slot>) -> Result<Self, Self::Error> {
        Self::new(slots)
    }
}

impl From<IndexSignature> for Vec<Slot> {
    fn from(sig: IndexSignature) -> Self {
        sig.slots
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct TensorRepr {
    signature: Vec<Slot>,
    components: Vec<ExactScalar>,
}

/// Dense spinor tensor with exact components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TensorRepr", into = "TensorRepr")]
pub struct SpinTensor {
    signature: IndexSignature,
    components: Vec<ExactScalar>,
}

impl TryFrom<TensorRepr> for SpinTensor {
    type Error = TensorError;

    fn try_from(repr: TensorRepr) -> Result<Self, Self::Error> {
        Self::new(IndexSignature::new(repr.signature)?, repr.components)
    }
}

impl From<SpinTensor> for TensorRepr {
    fn from(t: SpinTensor) -> Self {
        TensorRepr { signature: t.signature.slots, components: t.components }
    }
}

fn bit(lin: usize, n: usize, slot: usize) -> u8 {
    ((lin >> (n - 1 - slot)) & 1) as u8
}

fn tuple_of(lin: usize, n: usize) -> Vec<u8> {
    (0..n).map(|k| bit(lin, n, k)).collect()
}

fn linear_of(tuple: &[u8]) -> usize {
    tuple.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

/// Sign of a permutation given as the sequence of images of 0..k.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut p = perm.to_vec();
    let mut sign = 1;
    for i in 0..p.len() {
        while p[i] != i {
            let j = p[i];
            p.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

impl SpinTensor {
    pub fn new(
        signature: IndexSignature,
        components: Vec<ExactScalar>,
    ) -> Result<Self, TensorError> {
        if components.len() != signature.component_count() {
            return Err(TensorError::ComponentCount {
                expected: signature.component_count(),
                got: components.len(),
            });
        }
        Ok(Self { signature, components })
    }

    pub fn zero(signature: IndexSignature) -> Self {
        let components = vec![ExactScalar::zero(); signature.component_count()];
        Self { signature, components }
    }

    /// Zero-slot tensor holding a single scalar.
    pub fn scalar(value: ExactScalar) -> Self {
        Self { signature: IndexSignature::empty(), components: vec![value] }
    }

    /// Build a tensor by evaluating `f` on every index tuple in
    /// lexicographic order.
    pub fn from_fn(
        signature: IndexSignature,
        mut f: impl FnMut(&[u8]) -> ExactScalar,
    ) -> Self {
        let n = signature.len();
        let components = (0..signature.component_count())
            .map(|lin| f(&tuple_of(lin, n)))
            .collect();
        Self { signature, components }
    }

    pub fn signature(&self) -> &IndexSignature {
        &self.signature
    }

    pub fn slot_count(&self) -> usize {
        self.signature.len()
    }

    pub fn components(&self) -> &[ExactScalar] {
        &self.components
    }

    /// Component at an index tuple; `None` if the tuple has the wrong
    /// length or an index value other than 0 or 1.
    pub fn component(&self, indices: &[u8]) -> Option<&ExactScalar> {
        if indices.len() != self.slot_count() || indices.iter().any(|&b| b > 1) {
            return None;
        }
        Some(&self.components[linear_of(indices)])
    }

    /// Iterate over (index tuple, component) pairs in lexicographic order.
    pub fn enumerate(&self) -> impl Iterator<Item = (Vec<u8>, &ExactScalar)> {
        let n = self.slot_count();
        self.components
            .iter()
            .enumerate()
            .map(move |(lin, c)| (tuple_of(lin, n), c))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ExactScalar::is_zero)
    }

    /// Tensor product; the result signature is the concatenation of the
    /// operand signatures.
    pub fn tensor_product(&self, other: &SpinTensor) -> Result<SpinTensor, TensorError> {
        let mut slots = self.signature.slots.clone();
        slots.extend_from_slice(&other.signature.slots);
        let signature = IndexSignature::new(slots)?;
        let m = other.components.len();
        let mut components = Vec::with_capacity(signature.component_count());
        for a in &self.components {
            for b in &other.components {
                components.push(a * b);
            }
        }
        debug_assert_eq!(components.len(), (1 << self.slot_count()) * m);
        Ok(SpinTensor { signature, components })
    }

    pub fn add(&self, other: &SpinTensor) -> Result<SpinTensor, TensorError> {
        if self.signature != other.signature {
            return Err(TensorError::SignatureMismatch);
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Ok(SpinTensor { signature: self.signature.clone(), components })
    }

    pub fn sub(&self, other: &SpinTensor) -> Result<SpinTensor, TensorError> {
        if self.signature != other.signature {
            return Err(TensorError::SignatureMismatch);
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect();
        Ok(SpinTensor { signature: self.signature.clone(), components })
    }

    pub fn scale(&self, factor: &ExactScalar) -> SpinTensor {
        let components = self.components.iter().map(|c| c * factor).collect();
        SpinTensor { signature: self.signature.clone(), components }
    }

    pub fn negate(&self) -> SpinTensor {
        let components = self.components.iter().map(|c| -c).collect();
        SpinTensor { signature: self.signature.clone(), components }
    }

    /// Move the slot at position k to position `perm[k]`.
    ///
    /// The component of the result at tuple t equals the component of the
    /// source at the tuple s with s[k] = t[perm[k]], so a transposition on
    /// the antisymmetric epsilon form negates it, and
    /// `permute_slots(permute_slots(x, p), q)` equals
    /// `permute_slots(x, q after p)`.
    pub fn permute_slots(&self, perm: &[usize]) -> Result<SpinTensor, TensorError> {
        let n = self.slot_count();
        let valid = perm.len() == n && {
            let mut seen = vec![false; n];
            perm.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true))
        };
        if !valid {
            return Err(TensorError::InvalidPermutation { perm: perm.to_vec(), slots: n });
        }
        let mut slots = vec![Slot::down(false); n];
        for (k, &dest) in perm.iter().enumerate() {
            slots[dest] = self.signature.slots[k];
        }
        let signature = IndexSignature::new(slots)?;
        let mut components = vec![ExactScalar::zero(); self.components.len()];
        for (lin, c) in self.components.iter().enumerate() {
            let mut dest = 0usize;
            for k in 0..n {
                dest |= ((bit(lin, n, k)) as usize) << (n - 1 - perm[k]);
            }
            components[dest] = c.clone();
        }
        Ok(SpinTensor { signature, components })
    }

    /// Contract slot p with slot q (one upper and one lower slot of equal
    /// primedness), summing the paired index over {0, 1}. The remaining
    /// slots keep their relative order.
    pub fn contract(&self, p: usize, q: usize) -> Result<SpinTensor, TensorError> {
        let n = self.slot_count();
        for slot in [p, q] {
            if slot >= n {
                return Err(TensorError::SlotOutOfRange { slot, slots: n });
            }
        }
        let (sp, sq) = (self.signature.slots[p], self.signature.slots[q]);
        if p == q || sp.primed != sq.primed || sp.variance == sq.variance {
            return Err(TensorError::IncompatibleContraction { p, q });
        }
        let rest: Vec<usize> = (0..n).filter(|&k| k != p && k != q).collect();
        let signature =
            IndexSignature::new(rest.iter().map(|&k| self.signature.slots[k]).collect())?;
        let m = rest.len();
        let mut components = Vec::with_capacity(1 << m);
        let mut full = vec![0u8; n];
        for dest in 0..(1usize << m) {
            let mut acc = ExactScalar::zero();
            for v in 0..2u8 {
                for (j, &k) in rest.iter().enumerate() {
                    full[k] = bit(dest, m, j);
                }
                full[p] = v;
                full[q] = v;
                acc = acc + &self.components[linear_of(&full)];
            }
            components.push(acc);
        }
        Ok(SpinTensor { signature, components })
    }

    /// Lower an upper slot with the epsilon form: component-wise
    /// (s0, s1) -> (-s1, s0) on that slot.
    pub fn lower_slot(&self, slot: usize) -> Result<SpinTensor, TensorError> {
        self.epsilon_map(slot, Variance::Up, true)
    }

    /// Raise a lower slot; exact inverse of [`Self::lower_slot`]:
    /// component-wise (s0, s1) -> (s1, -s0) on that slot.
    pub fn raise_slot(&self, slot: usize) -> Result<SpinTensor, TensorError> {
        self.epsilon_map(slot, Variance::Down, false)
    }

    fn epsilon_map(
        &self,
        slot: usize,
        expect: Variance,
        lowering: bool,
    ) -> Result<SpinTensor, TensorError> {
        let n = self.slot_count();
        if slot >= n {
            return Err(TensorError::SlotOutOfRange { slot, slots: n });
        }
        if self.signature.slots[slot].variance != expect {
            return Err(TensorError::WrongVariance { slot });
        }
        let mut slots = self.signature.slots.clone();
        slots[slot].variance = match expect {
            Variance::Up => Variance::Down,
            Variance::Down => Variance::Up,
        };
        let signature = IndexSignature::new(slots)?;
        let mask = 1usize << (n - 1 - slot);
        let components = (0..self.components.len())
            .map(|lin| {
                let partner = &self.components[lin ^ mask];
                // lowering: new0 = -old1, new1 = old0; raising is the inverse.
                let negate = if lowering { lin & mask == 0 } else { lin & mask != 0 };
                if negate {
                    -partner
                } else {
                    partner.clone()
                }
            })
            .collect();
        Ok(SpinTensor { signature, components })
    }

    /// Complex conjugation: every slot's primed flag is toggled in place
    /// and every component is conjugated. An involution.
    pub fn conjugate(&self) -> SpinTensor {
        let slots = self
            .signature
            .slots
            .iter()
            .map(|s| Slot { primed: !s.primed, variance: s.variance })
            .collect();
        let signature = IndexSignature { slots };
        let components = self.components.iter().map(ExactScalar::conjugate).collect();
        SpinTensor { signature, components }
    }

    fn validate_groups(&self, groups: &[Vec<usize>]) -> Result<(), TensorError> {
        let n = self.slot_count();
        let fail = |reason: &str| TensorError::InvalidGroups { reason: reason.into() };
        if groups.is_empty() || groups[0].is_empty() {
            return Err(fail("groups must be nonempty"));
        }
        let len = groups[0].len();
        let mut seen = vec![false; n];
        for g in groups {
            if g.len() != len {
                return Err(fail("groups must all have the same length"));
            }
            for &slot in g {
                if slot >= n {
                    return Err(fail("slot position out of range"));
                }
                if std::mem::replace(&mut seen[slot], true) {
                    return Err(fail("groups must be disjoint"));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(fail("groups must cover every slot"));
        }
        for g in &groups[1..] {
            for (j, &slot) in g.iter().enumerate() {
                if self.signature.slots[slot] != self.signature.slots[groups[0][j]] {
                    return Err(fail("corresponding slots must have identical kinds"));
                }
            }
        }
        Ok(())
    }

    /// Rearrange composite groups: the slots of group g move to the
    /// positions of group `sigma[g]`. The signature is unchanged because
    /// corresponding slots agree in kind.
    pub fn group_permutation(
        &self,
        groups: &[Vec<usize>],
        sigma: &[usize],
    ) -> Result<SpinTensor, TensorError> {
        self.validate_groups(groups)?;
        let k = groups.len();
        let valid = sigma.len() == k && {
            let mut seen = vec![false; k];
            sigma.iter().all(|&p| p < k && !std::mem::replace(&mut seen[p], true))
        };
        if !valid {
            return Err(TensorError::InvalidPermutation { perm: sigma.to_vec(), slots: k });
        }
        let mut perm = vec![0usize; self.slot_count()];
        for (g, group) in groups.iter().enumerate() {
            for (j, &slot) in group.iter().enumerate() {
                perm[slot] = groups[sigma[g]][j];
            }
        }
        self.permute_slots(&perm)
    }

    /// Antisymmetrization projector over composite groups:
    /// (1/k!) sum over all k! group permutations with signs. Idempotent,
    /// and a tensor is totally antisymmetric exactly when it is a fixed
    /// point.
    pub fn alternate(&self, groups: &[Vec<usize>]) -> Result<SpinTensor, TensorError> {
        let sum = self.signed_group_sum(groups)?;
        let factorial: i64 = (1..=groups.len() as i64).product();
        Ok(sum.scale(&ExactScalar::ratio(1, factorial)))
    }

    /// Sum of all signed group permutations, without normalization.
    pub(crate) fn signed_group_sum(
        &self,
        groups: &[Vec<usize>],
    ) -> Result<SpinTensor, TensorError> {
        self.validate_groups(groups)?;
        let k = groups.len();
        let mut acc = SpinTensor::zero(self.signature.clone());
        let mut sigma: Vec<usize> = (0..k).collect();
        loop {
            let term = self.group_permutation(groups, &sigma)?;
            acc = if permutation_sign(&sigma) == 1 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
            if !next_permutation(&mut sigma) {
                return Ok(acc);
            }
        }
    }

    /// Check antisymmetry under the k-1 adjacent group transpositions
    /// (which generate all signed permutations). Each transposition yields
    /// one report item; a failure carries the lexicographically first
    /// offending index tuple.
    pub fn is_totally_antisymmetric(
        &self,
        groups: &[Vec<usize>],
    ) -> Result<VerificationReport, TensorError> {
        self.exchange_report(groups, true)
    }

    /// Symmetry counterpart: the component must be unchanged under every
    /// adjacent group transposition.
    pub fn is_totally_symmetric(
        &self,
        groups: &[Vec<usize>],
    ) -> Result<VerificationReport, TensorError> {
        self.exchange_report(groups, false)
    }

    fn exchange_report(
        &self,
        groups: &[Vec<usize>],
        antisymmetric: bool,
    ) -> Result<VerificationReport, TensorError> {
        self.validate_groups(groups)?;
        let k = groups.len();
        let n = self.slot_count();
        let mut report = VerificationReport::new();
        for j in 0..k.saturating_sub(1) {
            let mut sigma: Vec<usize> = (0..k).collect();
            sigma.swap(j, j + 1);
            let exchanged = self.group_permutation(groups, &sigma)?;
            let word = if antisymmetric { "antisymmetric" } else { "symmetric" };
            let name = format!("{word} under exchange of composite groups {j} and {}", j + 1);
            let mut counterexample = None;
            for lin in 0..self.components.len() {
                let required = if antisymmetric {
                    -&exchanged.components[lin]
                } else {
                    exchanged.components[lin].clone()
                };
                if self.components[lin] != required {
                    counterexample = Some(Counterexample {
                        indices: tuple_of(lin, n),
                        lhs: self.components[lin].clone(),
                        rhs: required,
                    });
                    break;
                }
            }
            report.push(CheckItem::from_outcome(name, counterexample));
        }
        Ok(report)
    }
}

/// First differing component of two same-signature tensors, rendered as a
/// report counterexample (lexicographic tuple order).
pub fn first_mismatch(lhs: &SpinTensor, rhs: &SpinTensor) -> Option<Counterexample> {
    debug_assert_eq!(lhs.signature(), rhs.signature());
    lhs.components
        .iter()
        .zip(rhs.components.iter())
        .position(|(a, b)| a != b)
        .map(|lin| Counterexample {
            indices: tuple_of(lin, lhs.slot_count()),
            lhs: lhs.components[lin].clone(),
            rhs: rhs.components[lin].clone(),
        })
}

/// Advance to the next permutation in lexicographic order; false when the
/// sequence was the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Unnormalized wedge product of composite tensors: the signed sum over
/// all orderings of the factors, so for two factors it is exactly
/// `a (x) b - b (x) a`. All factors must share one non-scalar signature.
pub fn wedge(factors: &[SpinTensor]) -> Result<SpinTensor, TensorError> {
    let first = factors.first().ok_or(TensorError::MixedWedgeFactors)?;
    if first.slot_count() == 0 {
        return Err(TensorError::MixedWedgeFactors);
    }
    if factors.iter().any(|f| f.signature() != first.signature()) {
        return Err(TensorError::MixedWedgeFactors);
    }
    let mut product = first.clone();
    for f in &factors[1..] {
        product = product.tensor_product(f)?;
    }
    let arity = first.slot_count();
    let groups: Vec<Vec<usize>> = (0..factors.len())
        .map(|g| (g * arity..(g + 1) * arity).collect())
        .collect();
    product.signed_group_sum(&groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn sig(slots: Vec<Slot>) -> IndexSignature {
        IndexSignature::new(slots).unwrap()
    }

    /// eps_{AB} = B - A on two lower unprimed slots.
    fn eps() -> SpinTensor {
        SpinTensor::new(
            sig(vec![Slot::down(false); 2]),
            vec![int(0), int(1), int(-1), int(0)],
        )
        .unwrap()
    }

    fn spinor_up(c0: i64, c1: i64) -> SpinTensor {
        SpinTensor::new(sig(vec![Slot::up(false)]), vec![int(c0), int(c1)]).unwrap()
    }

    #[test]
    fn component_layout_is_row_major() {
        let t = SpinTensor::from_fn(sig(vec![Slot::down(false); 3]), |idx| {
            int(idx[0] as i64 * 4 + idx[1] as i64 * 2 + idx[2] as i64)
        });
        for (lin, c) in t.components().iter().enumerate() {
            assert_eq!(c, &int(lin as i64));
        }
        assert_eq!(t.component(&[1, 0, 1]), Some(&int(5)));
        assert_eq!(t.component(&[1, 0]), None);
        assert_eq!(t.component(&[1, 0, 2]), None);
    }

    #[test]
    fn swapping_epsilon_negates_it() {
        let swapped = eps().permute_slots(&[1, 0]).unwrap();
        assert_eq!(swapped, eps().negate());
    }

    #[test]
    fn permutation_moves_slots_to_new_positions() {
        // Three distinguishable slots so the layout is unambiguous.
        let t = SpinTensor::from_fn(
            sig(vec![Slot::down(false), Slot::down(true), Slot::up(false)]),
            |idx| int(idx[0] as i64 * 4 + idx[1] as i64 * 2 + idx[2] as i64),
        );
        // Slot 0 -> position 2, slot 1 -> position 0, slot 2 -> position 1.
        let p = t.permute_slots(&[2, 0, 1]).unwrap();
        assert_eq!(
            p.signature().slots(),
            &[Slot::down(true), Slot::up(false), Slot::down(false)]
        );
        // Result at (a, b, c) is the source at (c, a, b).
        for (tuple, c) in p.enumerate() {
            let src = [tuple[2], tuple[0], tuple[1]];
            assert_eq!(t.component(&src), Some(c));
        }
    }

    #[test]
    fn product_of_epsilons_gives_metric_components() {
        let g = eps().tensor_product(&eps().conjugate()).unwrap();
        // In product slot order (A, B, A', B') the (0,1,0,1) component is
        // eps_{01} * conj(eps)_{01} = 1.
        assert_eq!(g.component(&[0, 1, 0, 1]), Some(&int(1)));
        assert_eq!(g.component(&[0, 1, 1, 0]), Some(&int(-1)));
        assert_eq!(g.component(&[0, 0, 1, 0]), Some(&int(0)));
    }

    #[test]
    fn contraction_of_identity_is_the_dimension() {
        let id = SpinTensor::new(
            sig(vec![Slot::up(false), Slot::down(false)]),
            vec![int(1), int(0), int(0), int(1)],
        )
        .unwrap();
        let trace = id.contract(0, 1).unwrap();
        assert_eq!(trace, SpinTensor::scalar(int(2)));
    }

    #[test]
    fn contraction_requires_compatible_slots() {
        let t = eps();
        assert_eq!(
            t.contract(0, 1).unwrap_err(),
            TensorError::IncompatibleContraction { p: 0, q: 1 }
        );
        let id = SpinTensor::new(
            sig(vec![Slot::up(false), Slot::down(false)]),
            vec![int(1), int(0), int(0), int(1)],
        )
        .unwrap();
        assert_eq!(
            id.contract(1, 1).unwrap_err(),
            TensorError::IncompatibleContraction { p: 1, q: 1 }
        );
    }

    #[test]
    fn lowering_the_standard_spinors() {
        // o^A = (1, 0) lowers to (0, 1); iota^A = (0, 1) lowers to (-1, 0).
        let o_low = spinor_up(1, 0).lower_slot(0).unwrap();
        assert_eq!(o_low.components(), &[int(0), int(1)]);
        let iota_low = spinor_up(0, 1).lower_slot(0).unwrap();
        assert_eq!(iota_low.components(), &[int(-1), int(0)]);
        assert_eq!(o_low.signature().slots(), &[Slot::down(false)]);
    }

    #[test]
    fn raising_inverts_lowering() {
        let xi = spinor_up(3, -5);
        let round = xi.lower_slot(0).unwrap().raise_slot(0).unwrap();
        assert_eq!(round, xi);
        let eta = xi.lower_slot(0).unwrap();
        assert_eq!(eta.raise_slot(0).unwrap().lower_slot(0).unwrap(), eta);
    }

    #[test]
    fn lowering_matches_contraction_against_epsilon() {
        // xi_A = xi^B eps_{BA}: contract the upper slot with the first
        // epsilon slot; the remaining epsilon slot is the new lower index.
        let xi = spinor_up(3, -5);
        let via_contraction = xi.tensor_product(&eps()).unwrap().contract(0, 1).unwrap();
        assert_eq!(via_contraction, xi.lower_slot(0).unwrap());
    }

    #[test]
    fn conjugation_is_an_involution_and_toggles_primes() {
        let t = SpinTensor::new(
            sig(vec![Slot::down(false), Slot::up(true)]),
            vec![
                ExactScalar::i(),
                int(2),
                ExactScalar::sqrt2(),
                int(0) - ExactScalar::i(),
            ],
        )
        .unwrap();
        let c = t.conjugate();
        assert_eq!(c.signature().slots(), &[Slot::down(true), Slot::up(false)]);
        assert_eq!(c.component(&[0, 0]), Some(&(-ExactScalar::i())));
        assert_eq!(c.conjugate(), t);
    }

    #[test]
    fn alternate_projects_out_the_symmetric_part() {
        // The metric-like tensor eps (x) conj(eps) in slot order
        // (A, B, A', B') is symmetric under the simultaneous composite
        // swap {A,A'} <-> {B,B'}, so its alternation vanishes.
        let g = eps().tensor_product(&eps().conjugate()).unwrap();
        let groups = vec![vec![0, 2], vec![1, 3]];
        assert!(g.alternate(&groups).unwrap().is_zero());
        assert!(g.is_totally_symmetric(&groups).unwrap().passed());
        assert!(!g.is_totally_antisymmetric(&groups).unwrap().passed());
    }

    #[test]
    fn alternate_fixes_an_antisymmetric_product() {
        // o_A o_B (x) conj(eps)_{A'B'} in slot order (A, B, A', B'):
        // symmetric unprimed part times antisymmetric primed part is
        // antisymmetric under the composite swap, hence a fixed point.
        let o_low = spinor_up(1, 0).lower_slot(0).unwrap();
        let t = o_low
            .tensor_product(&o_low)
            .unwrap()
            .tensor_product(&eps().conjugate())
            .unwrap();
        let groups = vec![vec![0, 2], vec![1, 3]];
        assert_eq!(t.alternate(&groups).unwrap(), t);
        assert!(t.is_totally_antisymmetric(&groups).unwrap().passed());
    }

    #[test]
    fn antisymmetry_counterexample_is_lexicographically_first() {
        let o_low = spinor_up(1, 0).lower_slot(0).unwrap();
        let t = o_low.tensor_product(&o_low).unwrap();
        let report = t
            .is_totally_antisymmetric(&[vec![0], vec![1]])
            .unwrap();
        assert!(!report.passed());
        let ce = report.items[0].counterexample.as_ref().unwrap();
        assert_eq!(ce.indices, vec![1, 1]);
        assert_eq!(ce.lhs, int(1));
        assert_eq!(ce.rhs, int(-1));
    }

    #[test]
    fn wedge_of_two_factors_is_the_antisymmetric_product() {
        let a = SpinTensor::from_fn(sig(vec![Slot::down(false), Slot::down(true)]), |idx| {
            int(1 + idx[0] as i64 * 2 + idx[1] as i64)
        });
        let b = SpinTensor::from_fn(sig(vec![Slot::down(false), Slot::down(true)]), |idx| {
            int(7 - idx[0] as i64 - 5 * idx[1] as i64)
        });
        let w = wedge(&[a.clone(), b.clone()]).unwrap();
        let direct = a
            .tensor_product(&b)
            .unwrap()
            .sub(&b.tensor_product(&a).unwrap())
            .unwrap();
        assert_eq!(w, direct);
        assert!(wedge(&[a.clone(), a.clone()]).unwrap().is_zero());
        assert!(w
            .is_totally_antisymmetric(&[vec![0, 1], vec![2, 3]])
            .unwrap()
            .passed());
    }

    #[test]
    fn wedge_rejects_mismatched_factors() {
        let a = SpinTensor::zero(sig(vec![Slot::down(false)]));
        let b = SpinTensor::zero(sig(vec![Slot::down(true)]));
        assert_eq!(wedge(&[a, b]).unwrap_err(), TensorError::MixedWedgeFactors);
        assert_eq!(
            wedge(&[SpinTensor::scalar(int(1))]).unwrap_err(),
            TensorError::MixedWedgeFactors
        );
    }

    #[test]
    fn slot_limit_is_enforced() {
        assert!(IndexSignature::new(vec![Slot::down(false); 9]).is_err());
        let four = SpinTensor::zero(sig(vec![Slot::down(false); 4]));
        let five = SpinTensor::zero(sig(vec![Slot::down(false); 5]));
        assert_eq!(
            four.tensor_product(&five).unwrap_err(),
            TensorError::TooManySlots { got: 9 }
        );
    }

    #[test]
    fn permutation_sign_matches_inversions() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[3, 2, 1, 0]), 1);
        assert_eq!(permutation_sign(&[0, 2, 1, 3]), -1);
    }

    #[test]
    fn json_round_trip_uses_scalar_strings() {
        let t = SpinTensor::new(
            sig(vec![Slot::up(true), Slot::down(false)]),
            vec![int(0), ExactScalar::i(), ExactScalar::ratio(-1, 2), ExactScalar::sqrt2()],
        )
        .unwrap();
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(
            json["signature"],
            serde_json::json!([
                {"primed": true, "variance": "up"},
                {"primed": false, "variance": "down"}
            ])
        );
        assert_eq!(json["components"], serde_json::json!(["0", "I", "-1/2", "sqrt2"]));
        let back: SpinTensor = serde_json::from_value(json).unwrap();
        assert_eq!(back, t);
        // Component count mismatches are rejected on the way in.
        let bad = serde_json::json!({
            "signature": [{"primed": false, "variance": "down"}],
            "components": ["0"]
        });
        assert!(serde_json::from_value::<SpinTensor>(bad).is_err());
    }
}
