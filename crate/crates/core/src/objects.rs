//! The standard spin frame and the totally antisymmetric tensor bases.
//!
//! Minkowski tensors are realized as spinor tensors whose slots come in
//! composite pairs (one unprimed, one primed), interleaved as
//! (A, A', B, B', ...). Everything is generated from one frame of
//! constants ([`PaperConstants`]): the antisymmetric epsilon forms and
//! the basis spinors they raise and lower. From these the module builds
//! the four real direction vectors
//!
//! ```text
//! u1 = o*co            u2 = o*ciota + iota*co
//! u3 = I*(o*ciota - iota*co)    u4 = iota*ciota
//! ```
//!
//! (`co`, `ciota` are the conjugate spinors), the six-element basis of
//! antisymmetric rank-2 tensors, the four-element rank-3 basis, and the
//! volume form. Each basis element exists twice — once transcribed
//! component-by-component from its closed form, once as a wedge product
//! of the `u` vectors — and the test suite insists the two constructions
//! agree exactly, so a transcription error in either path is caught.

use itertools::Itertools;

use crate::exec;
use crate::rank::rank_over_rationals;
use crate::report::{CheckItem, Counterexample, VerificationReport};
use crate::scalar::ExactScalar;
use crate::tensor::{
    first_mismatch, permutation_sign, wedge, IndexSignature, Slot, SpinTensor,
};

/// Errors from the construction helpers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ObjectError {
    #[error("index value {value} out of range; indices take the values 0 and 1")]
    IndexValue { value: u8 },
    #[error("antisymmetric subspaces are built for degree 2, 3 or 4, not {degree}")]
    UnsupportedDegree { degree: usize },
    #[error("operation requires an interleaved composite signature (unprimed/primed slot pairs of equal variance)")]
    NotComposite,
}

/// The fixed frame every construction starts from: the antisymmetric
/// epsilon forms (lower, upper, and their primed conjugates) and the two
/// standard basis spinors `o`, `iota` with their lowered and conjugated
/// variants.
///
/// Conventions: `eps_lower` has the closed form (B - A); lowering acts as
/// `xi_A = xi^B eps_{BA}`, which sends o = (1,0) to (0,1) and
/// iota = (0,1) to (-1,0) and gives the normalization
/// `o_A iota^A = 1`. `eps_upper` is the exact inverse (numerically the
/// same matrix), and the barred variants are plain conjugates.
#[derive(Debug, Clone)]
pub struct PaperConstants {
    pub eps_lower: SpinTensor,
    pub eps_upper: SpinTensor,
    pub eps_bar_lower: SpinTensor,
    pub eps_bar_upper: SpinTensor,
    pub o_up: SpinTensor,
    pub o_low: SpinTensor,
    pub iota_up: SpinTensor,
    pub iota_low: SpinTensor,
    pub o_bar_up: SpinTensor,
    pub o_bar_low: SpinTensor,
    pub iota_bar_up: SpinTensor,
    pub iota_bar_low: SpinTensor,
}

impl PaperConstants {
    pub fn new() -> Self {
        let eps_sig = IndexSignature::new(vec![Slot::down(false); 2]).expect("two slots");
        let eps_lower = SpinTensor::new(
            eps_sig,
            vec![
                ExactScalar::zero(),
                ExactScalar::one(),
                -ExactScalar::one(),
                ExactScalar::zero(),
            ],
        )
        .expect("four components");
        let eps_upper = eps_lower
            .raise_slot(0)
            .and_then(|t| t.raise_slot(1))
            .expect("epsilon slots are lower");
        let spinor_sig = IndexSignature::new(vec![Slot::up(false)]).expect("one slot");
        let o_up = SpinTensor::new(
            spinor_sig.clone(),
            vec![ExactScalar::one(), ExactScalar::zero()],
        )
        .expect("two components");
        let iota_up = SpinTensor::new(
            spinor_sig,
            vec![ExactScalar::zero(), ExactScalar::one()],
        )
        .expect("two components");
        let o_low = o_up.lower_slot(0).expect("upper slot");
        let iota_low = iota_up.lower_slot(0).expect("upper slot");
        Self {
            eps_bar_lower: eps_lower.conjugate(),
            eps_bar_upper: eps_upper.conjugate(),
            o_bar_up: o_up.conjugate(),
            o_bar_low: o_low.conjugate(),
            iota_bar_up: iota_up.conjugate(),
            iota_bar_low: iota_low.conjugate(),
            eps_lower,
            eps_upper,
            o_up,
            o_low,
            iota_up,
            iota_low,
        }
    }
}

impl Default for PaperConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// A tensor together with a short plain-text formula and the matching
/// display-math form, for reports and rendered output.
#[derive(Debug, Clone)]
pub struct NamedTensor {
    pub name: String,
    pub latex: String,
    pub tensor: SpinTensor,
}

impl NamedTensor {
    fn new(name: &str, latex: &str, tensor: SpinTensor) -> Self {
        Self { name: name.to_string(), latex: latex.to_string(), tensor }
    }
}

/// The antisymmetric epsilon form as an algebraic expression of its index
/// values: (A, B) -> B - A.
pub fn epsilon_closed_form(a: u8, b: u8) -> Result<ExactScalar, ObjectError> {
    for value in [a, b] {
        if value > 1 {
            return Err(ObjectError::IndexValue { value });
        }
    }
    Ok(ExactScalar::from_int(b as i64 - a as i64))
}

/// The volume form as an algebraic expression of its eight index values
/// (A, A', B, B', C, C', D, D'):
/// i * [(B-A)(D-C)(C'-A')(D'-B') - (C-A)(D-B)(B'-A')(D'-C')].
pub fn volume_closed_form(indices: [u8; 8]) -> Result<ExactScalar, ObjectError> {
    for value in indices {
        if value > 1 {
            return Err(ObjectError::IndexValue { value });
        }
    }
    let [a, ap, b, bp, c, cp, d, dp] = indices.map(i64::from);
    let bracket = (b - a) * (d - c) * (cp - ap) * (dp - bp)
        - (c - a) * (d - b) * (bp - ap) * (dp - cp);
    Ok(ExactScalar::from_int(bracket) * ExactScalar::i())
}

/// Signature of a lower composite-pair tensor: `pairs` interleaved
/// (unprimed, primed) lower slot pairs.
fn pair_signature(pairs: usize) -> IndexSignature {
    let mut slots = Vec::with_capacity(2 * pairs);
    for _ in 0..pairs {
        slots.push(Slot::down(false));
        slots.push(Slot::down(true));
    }
    IndexSignature::new(slots).expect("at most four pairs")
}

/// The composite groups of an interleaved tensor with `pairs` pairs:
/// [[0,1], [2,3], ...].
pub fn composite_groups(pairs: usize) -> Vec<Vec<usize>> {
    (0..pairs).map(|g| vec![2 * g, 2 * g + 1]).collect()
}

fn c1(t: &SpinTensor, a: u8) -> ExactScalar {
    t.component(&[a]).expect("single-slot tensor").clone()
}

fn c2(t: &SpinTensor, a: u8, b: u8) -> ExactScalar {
    t.component(&[a, b]).expect("two-slot tensor").clone()
}

/// The four real direction vectors u1..u4 as lower (A, A') tensors.
pub fn real_basis_lower(c: &PaperConstants) -> [SpinTensor; 4] {
    real_basis_from(
        &c.o_low,
        &c.iota_low,
        &c.o_bar_low,
        &c.iota_bar_low,
    )
}

/// The same four direction vectors with both slots upper.
pub fn real_basis_upper(c: &PaperConstants) -> [SpinTensor; 4] {
    real_basis_from(&c.o_up, &c.iota_up, &c.o_bar_up, &c.iota_bar_up)
}

fn real_basis_from(
    o: &SpinTensor,
    iota: &SpinTensor,
    o_bar: &SpinTensor,
    iota_bar: &SpinTensor,
) -> [SpinTensor; 4] {
    let prod = |x: &SpinTensor, y: &SpinTensor| {
        x.tensor_product(y).expect("two single-slot factors")
    };
    let u1 = prod(o, o_bar);
    let u4 = prod(iota, iota_bar);
    let mixed_a = prod(o, iota_bar);
    let mixed_b = prod(iota, o_bar);
    let u2 = mixed_a.add(&mixed_b).expect("same signature");
    let u3 = mixed_a
        .sub(&mixed_b)
        .expect("same signature")
        .scale(&ExactScalar::i());
    [u1, u2, u3, u4]
}

/// The six basis tensors of the totally antisymmetric rank-2 space,
/// transcribed literally from their closed forms, in the order
/// {o o ceps + eps co co, I(o o ceps - eps co co),
///  2I(iota o ceps - eps ciota co), iota o ceps + eps co ciota,
///  I(eps ciota ciota - iota iota ceps), eps ciota ciota + iota iota ceps}.
pub fn lambda2_basis(c: &PaperConstants) -> Vec<NamedTensor> {
    let sig = pair_signature(2);
    let o = |a: u8| c1(&c.o_low, a);
    let io = |a: u8| c1(&c.iota_low, a);
    let ob = |a: u8| c1(&c.o_bar_low, a);
    let ib = |a: u8| c1(&c.iota_bar_low, a);
    let ep = |a: u8, b: u8| c2(&c.eps_lower, a, b);
    let eb = |a: u8, b: u8| c2(&c.eps_bar_lower, a, b);
    let im = ExactScalar::i;
    let two_i = || ExactScalar::from_int(2) * ExactScalar::i();
    vec![
        NamedTensor::new(
            "o*o*ceps + eps*co*co",
            r"\omicron\omicron\overline{\epsilon}+\epsilon\overline{\omicron}\overline{\omicron}",
            SpinTensor::from_fn(sig.clone(), |t| {
                let [a, ap, b, bp] = [t[0], t[1], t[2], t[3]];
                o(a) * o(b) * eb(ap, bp) + ep(a, b) * ob(ap) * ob(bp)
            }),
        ),
        NamedTensor::new(
            "I*(o*o*ceps - eps*co*co)",
            r"i(\omicron\omicron\overline{\epsilon}-\epsilon\overline{\omicron}\overline{\omicron})",
            SpinTensor::from_fn(sig.clone(), |t| {
                let [a, ap, b, bp] = [t[0], t[1], t[2], t[3]];
                im() * (o(a) * o(b) * eb(ap, bp) - ep(a, b) * ob(ap) * ob(bp))
            }),
        ),
        NamedTensor::new(
            "2*I*(iota*o*ceps - eps*ciota*co)",
            r"2i(\iota\omicron\overline{\epsilon}-\epsilon\overline{\iota}\overline{\omicron})",
            SpinTensor::from_fn(sig.clone(), |t| {
                let [a, ap, b, bp] = [t[0], t[1], t[2], t[3]];
                two_i() * (io(a) * o(b) * eb(ap, bp) - ep(a, b) * ib(ap) * ob(bp))
            }),
        ),
        NamedTensor::new(
            "iota*o*ceps + eps*co*ciota",
            r"\iota\omicron\overline{\epsilon}+\epsilon\overline{\omicron}\overline{\iota}",
            SpinTensor::from_fn(sig.clone(), |t| {
                let [a, ap, b, bp] = [t[0], t[1], t[2], t[3]];
                io(a) * o(b) * eb(ap, bp) + ep(a, b) * ob(ap) * ib(bp)
            }),
        ),
        NamedTensor::new(
            "I*(eps*ciota*ciota - iota*iota*ceps)",
            r"i(\epsilon\overline{\iota}\overline{\iota}-\iota\iota\overline{\epsilon})",
            SpinTensor::from_fn(sig.clone(), |t| {
                let [a, ap, b, bp] = [t[0], t[1], t[2], t[3]];
                im() * (ep(a, b) * ib(ap) * ib(bp) - io(a) * io(b) * eb(ap, bp))
            }),
        ),
        NamedTensor::new(
            "eps*ciota*ciota + iota*iota*ceps",
            r"\epsilon\overline{\iota}\overline{\iota}+\iota\iota\overline{\epsilon}",
            SpinTensor::from_fn(sig, |t| {
                let [a, ap, b, bp] = [t[0], t[1], t[2], t[3]];
                ep(a, b) * ib(ap) * ib(bp) + io(a) * io(b) * eb(ap, bp)
            }),
        ),
    ]
}

/// The alternative closed form of the fourth rank-2 basis element
/// (o iota ceps + eps ciota co); equal to the stored one component-wise.
pub fn lambda2_fourth_alternative(c: &PaperConstants) -> SpinTensor {
    let o = |a: u8| c1(&c.o_low, a);
    let io = |a: u8| c1(&c.iota_low, a);
    let ob = |a: u8| c1(&c.o_bar_low, a);
    let ib = |a: u8| c1(&c.iota_bar_low, a);
    let ep = |a: u8, b: u8| c2(&c.eps_lower, a, b);
    let eb = |a: u8, b: u8| c2(&c.eps_bar_lower, a, b);
    SpinTensor::from_fn(pair_signature(2), |t| {
        let [a, ap, b, bp] = [t[0], t[1], t[2], t[3]];
        o(a) * io(b) * eb(ap, bp) + ep(a, b) * ib(ap) * ob(bp)
    })
}

/// The six rank-2 elements built independently as wedge products of the
/// real direction vectors, in the order matching [`lambda2_basis`]:
/// u1^u2, u1^u3, u2^u3, u1^u4, u3^u4, u2^u4.
pub fn lambda2_wedges(c: &PaperConstants) -> Vec<SpinTensor> {
    let [u1, u2, u3, u4] = real_basis_lower(c);
    [(0, 1), (0, 2), (1, 2), (0, 3), (2, 3), (1, 3)]
        .iter()
        .map(|&(i, j)| {
            let u = [&u1, &u2, &u3, &u4];
            wedge(&[u[i].clone(), u[j].clone()]).expect("matching factors")
        })
        .collect()
}

/// The four basis tensors of the totally antisymmetric rank-3 space.
///
/// The first two are X + conj(X) and iX + conj(iX) for the cyclic sum
/// X = eps_{AB} o_C (ceps_{A'C'} ciota_{B'} + ceps_{B'C'} ciota_{A'}) +
///     eps_{AC} o_B (ceps_{B'A'} ciota_{C'} + ceps_{B'C'} ciota_{A'}) +
///     eps_{BC} o_A (ceps_{B'A'} ciota_{C'} + ceps_{C'A'} ciota_{B'}),
/// the last two the 2i(...) closed forms; conj is the composite-pair
/// conjugation [`reality_conjugate`].
pub fn lambda3_basis(c: &PaperConstants) -> Vec<NamedTensor> {
    let sig = pair_signature(3);
    let o = |a: u8| c1(&c.o_low, a);
    let io = |a: u8| c1(&c.iota_low, a);
    let ob = |a: u8| c1(&c.o_bar_low, a);
    let ib = |a: u8| c1(&c.iota_bar_low, a);
    let ep = |a: u8, b: u8| c2(&c.eps_lower, a, b);
    let eb = |a: u8, b: u8| c2(&c.eps_bar_lower, a, b);
    let two_i = || ExactScalar::from_int(2) * ExactScalar::i();
    let x = SpinTensor::from_fn(sig.clone(), |t| {
        let [a, ap, b, bp, cc, cp] = [t[0], t[1], t[2], t[3], t[4], t[5]];
        ep(a, b) * o(cc) * (eb(ap, cp) * ib(bp) + eb(bp, cp) * ib(ap))
            + ep(a, cc) * o(b) * (eb(bp, ap) * ib(cp) + eb(bp, cp) * ib(ap))
            + ep(b, cc) * o(a) * (eb(bp, ap) * ib(cp) + eb(cp, ap) * ib(bp))
    });
    let l1 = x
        .add(&reality_conjugate(&x).expect("composite signature"))
        .expect("same signature");
    let ix = x.scale(&ExactScalar::i());
    let l2 = ix
        .add(&reality_conjugate(&ix).expect("composite signature"))
        .expect("same signature");
    let l3 = SpinTensor::from_fn(sig.clone(), |t| {
        let [a, ap, b, bp, cc, cp] = [t[0], t[1], t[2], t[3], t[4], t[5]];
        two_i()
            * (ep(a, b) * o(cc) * ob(ap) * eb(bp, cp)
                - o(a) * ep(b, cc) * eb(ap, bp) * ob(cp))
    });
    let l4 = SpinTensor::from_fn(sig, |t| {
        let [a, ap, b, bp, cc, cp] = [t[0], t[1], t[2], t[3], t[4], t[5]];
        two_i()
            * (io(a) * ep(b, cc) * eb(ap, bp) * ib(cp)
                - ep(a, b) * io(cc) * ib(ap) * eb(bp, cp))
    });
    const CYCLIC_SUM: &str = r"\epsilon_{AB}\omicron_{C}(\overline{\epsilon}_{A'C'}\overline{\iota}_{B'}+\overline{\epsilon}_{B'C'}\overline{\iota}_{A'})+\epsilon_{AC}\omicron_{B}(\overline{\epsilon}_{B'A'}\overline{\iota}_{C'}+\overline{\epsilon}_{B'C'}\overline{\iota}_{A'})+\epsilon_{BC}\omicron_{A}(\overline{\epsilon}_{B'A'}\overline{\iota}_{C'}+\overline{\epsilon}_{C'A'}\overline{\iota}_{B'})";
    vec![
        NamedTensor::new(
            "-3 * (u1 ^ u2 ^ u4)",
            &format!("{CYCLIC_SUM}+c.c."),
            l1,
        ),
        NamedTensor::new(
            "-3 * (u1 ^ u3 ^ u4)",
            &format!("i[{CYCLIC_SUM}]+c.c."),
            l2,
        ),
        NamedTensor::new(
            "u1 ^ u2 ^ u3",
            r"2i(\epsilon_{AB}\omicron_{C}\overline{\omicron}_{A'}\overline{\epsilon}_{B'C'}-\omicron_{A}\epsilon_{BC}\overline{\epsilon}_{A'B'}\overline{\omicron}_{C'})",
            l3,
        ),
        NamedTensor::new(
            "u2 ^ u3 ^ u4",
            r"2i(\iota_{A}\epsilon_{BC}\overline{\epsilon}_{A'B'}\overline{\iota}_{C'}-\epsilon_{AB}\iota_{C}\overline{\iota}_{A'}\overline{\epsilon}_{B'C'})",
            l4,
        ),
    ]
}

/// The rank-3 elements built independently as (scaled) triple wedges, in
/// the order matching [`lambda3_basis`].
pub fn lambda3_wedges(c: &PaperConstants) -> Vec<SpinTensor> {
    let [u1, u2, u3, u4] = real_basis_lower(c);
    let minus_three = ExactScalar::from_int(-3);
    vec![
        wedge(&[u1.clone(), u2.clone(), u4.clone()])
            .expect("matching factors")
            .scale(&minus_three),
        wedge(&[u1.clone(), u3.clone(), u4.clone()])
            .expect("matching factors")
            .scale(&minus_three),
        wedge(&[u1, u2.clone(), u3.clone()]).expect("matching factors"),
        wedge(&[u2, u3, u4]).expect("matching factors"),
    ]
}

/// The volume form built from tensor products of the epsilon constants,
/// i (eps_{AB} eps_{CD} ceps_{A'C'} ceps_{B'D'} - eps_{AC} eps_{BD}
/// ceps_{A'B'} ceps_{C'D'}), with slots interleaved
/// (A, A', B, B', C, C', D, D').
pub fn volume_tensor(c: &PaperConstants) -> SpinTensor {
    let quad = |perm: &[usize]| {
        c.eps_lower
            .tensor_product(&c.eps_lower)
            .and_then(|t| t.tensor_product(&c.eps_bar_lower))
            .and_then(|t| t.tensor_product(&c.eps_bar_lower))
            .and_then(|t| t.permute_slots(perm))
            .expect("eight slots, valid permutation")
    };
    // Product slot order (A,B, C,D, A',C', B',D') -> interleaved.
    let term1 = quad(&[0, 2, 4, 6, 1, 5, 3, 7]);
    // Product slot order (A,C, B,D, A',B', C',D') -> interleaved.
    let term2 = quad(&[0, 4, 2, 6, 1, 3, 5, 7]);
    term1
        .sub(&term2)
        .expect("same signature")
        .scale(&ExactScalar::i())
}

/// The one-element rank-4 basis: the volume form.
pub fn lambda4_basis(c: &PaperConstants) -> Vec<NamedTensor> {
    vec![NamedTensor::new(
        "volume form",
        r"i\left(\epsilon_{AB}\epsilon_{CD}\overline{\epsilon}_{A'C'}\overline{\epsilon}_{B'D'}-\epsilon_{AC}\epsilon_{BD}\overline{\epsilon}_{A'B'}\overline{\epsilon}_{C'D'}\right)",
        volume_tensor(c),
    )]
}

/// The six (0,2;0,2) building blocks every rank-2 basis element combines:
/// three with a symmetric unprimed part times ceps, three with eps times
/// a symmetric primed part. They are exactly the Hodge eigen-tensors.
pub fn duality_building_blocks(c: &PaperConstants) -> Vec<NamedTensor> {
    let sig = pair_signature(2);
    let o = |a: u8| c1(&c.o_low, a);
    let io = |a: u8| c1(&c.iota_low, a);
    let ob = |a: u8| c1(&c.o_bar_low, a);
    let ib = |a: u8| c1(&c.iota_bar_low, a);
    let ep = |a: u8, b: u8| c2(&c.eps_lower, a, b);
    let eb = |a: u8, b: u8| c2(&c.eps_bar_lower, a, b);
    vec![
        NamedTensor::new(
            "o*o*ceps",
            r"\omicron\omicron\overline{\epsilon}",
            SpinTensor::from_fn(sig.clone(), |t| {
                o(t[0]) * o(t[2]) * eb(t[1], t[3])
            }),
        ),
        NamedTensor::new(
            "iota*iota*ceps",
            r"\iota\iota\overline{\epsilon}",
            SpinTensor::from_fn(sig.clone(), |t| {
                io(t[0]) * io(t[2]) * eb(t[1], t[3])
            }),
        ),
        NamedTensor::new(
            "(iota*o + o*iota)*ceps",
            r"(\iota\omicron+\omicron\iota)\overline{\epsilon}",
            SpinTensor::from_fn(sig.clone(), |t| {
                (io(t[0]) * o(t[2]) + o(t[0]) * io(t[2])) * eb(t[1], t[3])
            }),
        ),
        NamedTensor::new(
            "eps*co*co",
            r"\epsilon\overline{\omicron}\overline{\omicron}",
            SpinTensor::from_fn(sig.clone(), |t| {
                ep(t[0], t[2]) * ob(t[1]) * ob(t[3])
            }),
        ),
        NamedTensor::new(
            "eps*(ciota*co + co*ciota)",
            r"\epsilon(\overline{\iota}\overline{\omicron}+\overline{\omicron}\overline{\iota})",
            SpinTensor::from_fn(sig.clone(), |t| {
                ep(t[0], t[2]) * (ib(t[1]) * ob(t[3]) + ob(t[1]) * ib(t[3]))
            }),
        ),
        NamedTensor::new(
            "eps*ciota*ciota",
            r"\epsilon\overline{\iota}\overline{\iota}",
            SpinTensor::from_fn(sig, |t| {
                ep(t[0], t[2]) * ib(t[1]) * ib(t[3])
            }),
        ),
    ]
}

fn composite_pairs_ok(t: &SpinTensor) -> bool {
    let slots = t.signature().slots();
    slots.len().is_multiple_of(2)
        && !slots.is_empty()
        && slots.chunks(2).all(|pair| {
            !pair[0].primed && pair[1].primed && pair[0].variance == pair[1].variance
        })
}

/// Conjugation of an interleaved composite tensor as a Minkowski tensor:
/// conjugate every component and swap the two slots of each pair, so the
/// result carries the original signature. Real tensors are the fixed
/// points.
pub fn reality_conjugate(t: &SpinTensor) -> Result<SpinTensor, ObjectError> {
    if !composite_pairs_ok(t) {
        return Err(ObjectError::NotComposite);
    }
    let swap: Vec<usize> = (0..t.slot_count()).map(|k| k ^ 1).collect();
    Ok(t.conjugate()
        .permute_slots(&swap)
        .expect("pair swap is a valid permutation"))
}

/// Whether an interleaved composite tensor equals its own
/// [`reality_conjugate`].
pub fn is_real_composite(t: &SpinTensor) -> Result<bool, ObjectError> {
    Ok(&reality_conjugate(t)? == t)
}

fn tuple8(lin: usize) -> [u8; 8] {
    let mut out = [0u8; 8];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = ((lin >> (7 - k)) & 1) as u8;
    }
    out
}

/// The full reduction argument for the volume form, as one report:
/// agreement of the epsilon-product construction with the index closed
/// form on all 256 tuples, the three pair-exchange cancellation
/// identities evaluated through the closed form, the two-pair cyclic
/// shift, and all 24 signed composite permutations of the tensor itself.
pub fn verify_theorem3_reduction(c: &PaperConstants) -> VerificationReport {
    let mut report = VerificationReport::new();
    let e = volume_tensor(c);
    let closed = |lin: usize| {
        volume_closed_form(tuple8(lin)).expect("binary tuple")
    };

    // Construction vs. closed form, all 256 tuples.
    let closed_tensor =
        SpinTensor::from_fn(pair_signature(4), |t| {
            let mut idx = [0u8; 8];
            idx.copy_from_slice(t);
            volume_closed_form(idx).expect("binary tuple")
        });
    report.push(CheckItem::from_outcome(
        "volume form: epsilon-product construction matches the index closed form on all 256 tuples"
            .to_string(),
        first_mismatch(&e, &closed_tensor),
    ));

    // The three cancellation identities, term-by-term through the closed
    // form: exchanging pair 0 with pair g negates every value.
    for g in 1..4usize {
        let mut counterexample = None;
        for lin in 0..256 {
            let t = tuple8(lin);
            let mut s = t;
            s.swap(0, 2 * g);
            s.swap(1, 2 * g + 1);
            let lhs = closed(lin);
            let rhs = -volume_closed_form(s).expect("binary tuple");
            if lhs != rhs {
                counterexample = Some(Counterexample {
                    indices: t.to_vec(),
                    lhs,
                    rhs,
                });
                break;
            }
        }
        report.push(CheckItem::from_outcome(
            format!("closed form negates under exchange of composite pairs 0 and {g}"),
            counterexample,
        ));
    }

    // Cyclic shift by two pairs leaves the closed form unchanged.
    let mut cyclic_counterexample = None;
    for lin in 0..256 {
        let t = tuple8(lin);
        let mut s = [0u8; 8];
        s[..4].copy_from_slice(&t[4..]);
        s[4..].copy_from_slice(&t[..4]);
        let lhs = closed(lin);
        let rhs = volume_closed_form(s).expect("binary tuple");
        if lhs != rhs {
            cyclic_counterexample = Some(Counterexample { indices: t.to_vec(), lhs, rhs });
            break;
        }
    }
    report.push(CheckItem::from_outcome(
        "closed form is invariant under the cyclic shift by two composite pairs".to_string(),
        cyclic_counterexample,
    ));

    // All 24 signed permutations of the tensor's composite pairs.
    let groups = composite_groups(4);
    let sigmas: Vec<Vec<usize>> = (0..4usize).permutations(4).collect();
    let items = exec::map(&sigmas, |sigma| {
        let permuted = e
            .group_permutation(&groups, sigma)
            .expect("valid composite permutation");
        let expected = if permutation_sign(sigma) == 1 { e.clone() } else { e.negate() };
        CheckItem::from_outcome(
            format!("volume form changes by the permutation sign under {sigma:?}"),
            first_mismatch(&permuted, &expected),
        )
    });
    for item in items {
        report.push(item);
    }
    report
}

/// Exact dimension of the totally antisymmetric subspace of degree-k
/// composite tensors: the rank of the alternation projector applied to
/// all 4^k products of the real direction vectors. Equals C(4, k).
pub fn antisym_subspace_dimension(
    c: &PaperConstants,
    degree: usize,
) -> Result<usize, ObjectError> {
    if !(2..=4).contains(&degree) {
        return Err(ObjectError::UnsupportedDegree { degree });
    }
    let u = real_basis_lower(c);
    let groups = composite_groups(degree);
    let words: Vec<Vec<usize>> = (0..4usize.pow(degree as u32))
        .map(|mut w| {
            let mut digits = vec![0usize; degree];
            for d in digits.iter_mut().rev() {
                *d = w % 4;
                w /= 4;
            }
            digits
        })
        .collect();
    let family = exec::map(&words, |word| {
        let mut t = u[word[0]].clone();
        for &j in &word[1..] {
            t = t.tensor_product(&u[j]).expect("at most eight slots");
        }
        t.alternate(&groups).expect("valid composite groups")
    });
    Ok(rank_over_rationals(&family).expect("family shares one signature"))
}
