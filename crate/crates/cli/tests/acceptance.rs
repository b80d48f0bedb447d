//! End-to-end acceptance suite. Each test covers one numbered criterion
//! and prints a single PASS line on success (run with --nocapture to see
//! them); a failure panics with the counterexample. Everything here is
//! exact — there are no tolerances anywhere.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spintensor::minkowski::{
    duality_decompose, epsilon_invariance_check, epsilon_transform,
    gram_of_real_basis, hodge_dual, random_sl2c, random_spinor,
    real_matrix_signature, recompose, sl2c_to_lorentz, spinor_to_null_vector,
    Matrix2, SL2CMatrix,
};
use spintensor::objects::{
    antisym_subspace_dimension, composite_groups, duality_building_blocks,
    epsilon_closed_form, is_real_composite, lambda2_basis, lambda2_wedges,
    lambda3_basis, lambda3_wedges, verify_theorem3_reduction, volume_closed_form,
    volume_tensor, PaperConstants,
};
use spintensor::rank::rank_over_rationals;
use spintensor::sdsl::run_program;
use spintensor::{ExactScalar, SpinTensor};

const SEED: u64 = 1046;

fn pass(criterion: u8, what: &str) {
    println!("PASS criterion {criterion}: {what}");
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn criterion_1_epsilon_closed_form() {
    let c = PaperConstants::new();
    for a in 0..2u8 {
        for b in 0..2u8 {
            let expected = epsilon_closed_form(a, b).unwrap();
            assert_eq!(c.eps_lower.component(&[a, b]).unwrap(), &expected);
            assert_eq!(c.eps_bar_lower.component(&[a, b]).unwrap(), &expected);
        }
    }
    pass(1, "all epsilon components equal the index difference, unprimed and primed");
}

#[test]
fn criterion_2_volume_reduction() {
    let c = PaperConstants::new();
    let e = volume_tensor(&c);
    for (tuple, value) in e.enumerate() {
        let expected = volume_closed_form(tuple.clone().try_into().unwrap()).unwrap();
        assert_eq!(value, &expected, "closed form differs at {tuple:?}");
    }
    let report = verify_theorem3_reduction(&c);
    assert!(
        report.passed(),
        "reduction argument failed:\n{}",
        report.to_text()
    );
    // 256-tuple agreement, three pair identities, the cyclic shift, and
    // all 24 signed permutations must each be present.
    assert!(report.items.len() >= 28, "only {} items", report.items.len());
    pass(2, "volume form equals its closed form; all reduction identities hold");
}

#[test]
fn criterion_3_rank2_basis() {
    let c = PaperConstants::new();
    let basis = lambda2_basis(&c);
    let wedges = lambda2_wedges(&c);
    assert_eq!(basis.len(), 6);
    let groups = composite_groups(2);
    for (named, wedge) in basis.iter().zip(&wedges) {
        let t = &named.tensor;
        assert!(
            t.is_totally_antisymmetric(&groups).unwrap().passed(),
            "[{}] is not antisymmetric",
            named.name
        );
        assert!(is_real_composite(t).unwrap(), "[{}] is not real", named.name);
        assert_eq!(t, wedge, "[{}] differs from its wedge construction", named.name);
    }
    let tensors: Vec<SpinTensor> = basis.iter().map(|n| n.tensor.clone()).collect();
    assert_eq!(rank_over_rationals(&tensors).unwrap(), 6);
    pass(3, "six rank-2 tensors antisymmetric, real, wedge-equal, of rank 6");
}

#[test]
fn criterion_4_rank3_basis() {
    let c = PaperConstants::new();
    let basis = lambda3_basis(&c);
    let wedges = lambda3_wedges(&c);
    assert_eq!(basis.len(), 4);
    let groups = composite_groups(3);
    for (named, wedge) in basis.iter().zip(&wedges) {
        let t = &named.tensor;
        assert!(
            t.is_totally_antisymmetric(&groups).unwrap().passed(),
            "[{}] is not antisymmetric",
            named.name
        );
        // The wedge list carries the -3 scale factors on the first two
        // elements, so equality covers them.
        assert_eq!(t, wedge, "[{}] differs from its wedge construction", named.name);
    }
    let tensors: Vec<SpinTensor> = basis.iter().map(|n| n.tensor.clone()).collect();
    assert_eq!(rank_over_rationals(&tensors).unwrap(), 4);
    pass(4, "four rank-3 tensors antisymmetric, wedge-equal, of rank 4");
}

#[test]
fn criterion_5_projector_dimensions() {
    let c = PaperConstants::new();
    assert_eq!(antisym_subspace_dimension(&c, 2).unwrap(), 6);
    assert_eq!(antisym_subspace_dimension(&c, 3).unwrap(), 4);
    assert_eq!(antisym_subspace_dimension(&c, 4).unwrap(), 1);
    pass(5, "alternation projector ranks are 6, 4, 1 for degrees 2, 3, 4");
}

#[test]
fn criterion_6_spin_frame_and_lorentz() {
    let c = PaperConstants::new();

    // Normalization: o_A iota^A = 1.
    let normalization = c
        .o_low
        .tensor_product(&c.iota_up)
        .unwrap()
        .contract(0, 1)
        .unwrap();
    assert_eq!(normalization.component(&[]).unwrap(), &ExactScalar::one());

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    // Self-contraction vanishes for 100 random spinors.
    for _ in 0..100 {
        let xi = random_spinor(&mut rng);
        let traced = xi
            .lower_slot(0)
            .unwrap()
            .tensor_product(&xi)
            .unwrap()
            .contract(0, 1)
            .unwrap();
        assert!(traced.component(&[]).unwrap().is_zero(), "xi_A xi^A != 0");
    }

    // Epsilon invariance holds for 50 determinant-one samples...
    for _ in 0..50 {
        let l = random_sl2c(&mut rng);
        let check = epsilon_invariance_check(&c, l.matrix());
        assert!(check.passed(), "invariance failed for a det-1 matrix");
    }
    // ...and fails whenever the determinant is not one; the transform
    // scales epsilon by exactly det L.
    let two = ExactScalar::from_int(2);
    let det_two = Matrix2::new([
        [two.clone(), ExactScalar::zero()],
        [ExactScalar::zero(), ExactScalar::one()],
    ]);
    assert!(!epsilon_invariance_check(&c, &det_two).passed());
    assert_eq!(
        epsilon_transform(&c, &det_two),
        c.eps_lower.scale(&two),
        "transform must scale epsilon by the determinant"
    );

    // Light cone: the induced vector of any spinor has null norm.
    for _ in 0..100 {
        let xi = random_spinor(&mut rng);
        let v = spinor_to_null_vector(&xi).unwrap();
        assert!(v.norm_sq().is_zero(), "t^2 - x^2 - y^2 - z^2 != 0");
    }

    // Double cover and homomorphism on 25 seeded pairs.
    for _ in 0..25 {
        let l = random_sl2c(&mut rng);
        let m = random_sl2c(&mut rng);
        let minus_l = SL2CMatrix::new(l.matrix().negate()).unwrap();
        assert_eq!(
            sl2c_to_lorentz(&minus_l),
            sl2c_to_lorentz(&l),
            "L and -L must induce the same transformation"
        );
        let product = SL2CMatrix::new(l.matrix().mul(m.matrix())).unwrap();
        assert_eq!(
            sl2c_to_lorentz(&product),
            sl2c_to_lorentz(&l).mul(&sl2c_to_lorentz(&m)),
            "the induced map must be a homomorphism"
        );
    }
    pass(6, "frame normalization, null spinors, invariance iff det 1, light cone, double cover");
}

#[test]
fn criterion_7_gram_matrix_and_signature() {
    let c = PaperConstants::new();
    let gram = gram_of_real_basis(&c);
    let minus_two = ExactScalar::from_int(-2);
    let expected: [[ExactScalar; 4]; 4] = [
        [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero(), ExactScalar::one()],
        [ExactScalar::zero(), minus_two.clone(), ExactScalar::zero(), ExactScalar::zero()],
        [ExactScalar::zero(), ExactScalar::zero(), minus_two, ExactScalar::zero()],
        [ExactScalar::one(), ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero()],
    ];
    assert_eq!(gram, expected);
    // One positive, three negative, no null directions.
    assert_eq!(real_matrix_signature(&gram).unwrap(), (1, 3, 0));
    pass(7, "Gram matrix matches and diagonalizes to signature (+,-,-,-)");
}

#[test]
fn criterion_8_duality() {
    let c = PaperConstants::new();
    let minus_i = -ExactScalar::i();

    // ** = -1 on the full rank-2 basis, and decomposition round-trips.
    for named in lambda2_basis(&c) {
        let once = hodge_dual(&c, &named.tensor).unwrap();
        let twice = hodge_dual(&c, &once).unwrap();
        assert_eq!(twice, named.tensor.negate(), "** != -1 on [{}]", named.name);

        let (phi, psi_bar) = duality_decompose(&c, &named.tensor).unwrap();
        let rebuilt = recompose(&c, &phi, &psi_bar).unwrap();
        assert_eq!(rebuilt, named.tensor, "round trip failed on [{}]", named.name);
        // Reality of the basis element pairs the two halves by
        // conjugation.
        assert_eq!(psi_bar, phi.conjugate(), "halves of [{}] are not conjugate", named.name);
    }

    // The six building blocks are eigen-tensors: the three with the
    // symmetric unprimed part have eigenvalue -i, the conjugate three +i.
    let blocks = duality_building_blocks(&c);
    assert_eq!(blocks.len(), 6);
    for (k, named) in blocks.iter().enumerate() {
        let eigenvalue = if k < 3 { minus_i.clone() } else { ExactScalar::i() };
        let dual = hodge_dual(&c, &named.tensor).unwrap();
        assert_eq!(
            dual,
            named.tensor.scale(&eigenvalue),
            "[{}] is not an eigen-tensor of eigenvalue {eigenvalue}",
            named.name
        );
    }
    pass(8, "** = -1, decomposition round-trips, six eigen-tensors of eigenvalue +/-i");
}

#[test]
fn criterion_9_sdsl_and_binary() {
    let c = PaperConstants::new();

    // The eleven fixture formulas evaluate identically to the library.
    let mut displays = 0;
    let theorem1 = run_fixture("theorem1.sdsl", &c);
    for (k, named) in lambda2_basis(&c).iter().enumerate() {
        assert_eq!(find(&theorem1, &format!("d{}", k + 1)), named.tensor);
        displays += 1;
    }
    let theorem2 = run_fixture("theorem2.sdsl", &c);
    for (k, named) in lambda3_basis(&c).iter().enumerate() {
        assert_eq!(find(&theorem2, &format!("L{}", k + 1)), named.tensor);
        displays += 1;
    }
    let theorem3 = run_fixture("theorem3.sdsl", &c);
    assert_eq!(find(&theorem3, "e"), volume_tensor(&c));
    displays += 1;
    assert_eq!(displays, 11);

    // Ten malformed files fail at their pinned 1-based positions.
    let malformed = [
        ("stray_character.sdsl", (1, 21)),
        ("unterminated_bracket.sdsl", (1, 7)),
        ("missing_assign.sdsl", (1, 8)),
        ("trailing_operator.sdsl", (1, 15)),
        ("reserved_name.sdsl", (1, 1)),
        ("undeclared_symbol.sdsl", (1, 11)),
        ("arity_mismatch.sdsl", (1, 22)),
        ("free_set_mismatch.sdsl", (1, 1)),
        ("triple_index.sdsl", (1, 1)),
        ("zero_denominator.sdsl", (1, 8)),
    ];
    for (name, position) in malformed {
        let text = std::fs::read_to_string(fixture_dir().join("bad").join(name)).unwrap();
        let err = run_program(&text, &c).expect_err(name);
        assert_eq!(err.position(), position, "{name}: {err}");
    }

    // The installed binary verifies everything in under five seconds.
    let started = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_spintensor"))
        .arg("verify-paper")
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    assert!(output.status.success(), "verify-paper exited nonzero");
    let stdout = String::from_utf8(output.stdout).unwrap();
    let passing = stdout.lines().filter(|l| l.starts_with("PASS ")).count();
    assert!(passing >= 40, "only {passing} passing items");
    assert!(!stdout.contains("\nFAIL "), "report contains failures");
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "verify-paper took {:.2} s",
        elapsed.as_secs_f64()
    );
    pass(9, "11 fixtures match the library, 10 error positions pinned, binary passes in time");
}

fn run_fixture(name: &str, c: &PaperConstants) -> Vec<(String, SpinTensor)> {
    let text = std::fs::read_to_string(fixture_dir().join(name)).unwrap();
    let outcome = run_program(&text, c).unwrap_or_else(|e| panic!("{name}: {e}"));
    assert!(outcome.all_passed(), "{name}: a query failed");
    outcome.definitions
}

fn find(definitions: &[(String, SpinTensor)], name: &str) -> SpinTensor {
    definitions
        .iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("no definition named '{name}'"))
        .1
        .clone()
}
