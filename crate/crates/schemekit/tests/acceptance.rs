//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N: PASS` line (visible with `--nocapture`). Tolerances are
//! pinned here, not read from config, so a regression cannot silently
//! loosen them.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, One, Zero};

use schemekit::constructors::{
    self, attenuated_recurrence_oracle, extension_recurrence_oracle,
    generalized_johnson_oracle, product_coefficients, AttenuatedGenerator, Built, GjGenerator,
};
use schemekit::polycheck::{
    check_p, check_q, search_p, search_q, subalgebra_dimension_p, subalgebra_dimension_q,
    Labeling,
};
use schemekit::polystruct::{ideal_generators, recover_v_star, verify_groebner};
use schemekit::scheme::{IntersectionTensor, RelationScheme};
use schemekit::spectrum::{univariate_p_check, univariate_q_check, Spectrum};
use schemekit::MonomialOrder;

const TOL: f64 = 1e-8;
const MATRIX_TOL: f64 = 1e-6;
const SEED: u64 = 12345;

fn spectrum_of(scheme: &RelationScheme) -> (IntersectionTensor, Spectrum) {
    let tensor = scheme.intersection_tensor().expect("axioms");
    let sp = Spectrum::compute(&tensor, TOL, SEED).expect("spectrum");
    (tensor, sp)
}

fn labeling_of(built: &Built) -> &Labeling {
    built.labeling.as_ref().expect("canonical labeling")
}

/// Pinned first eigenmatrix of the dodecahedron, eigenspaces in the order
/// (0,0), (0,1), (0,2), (1,0), (1,1), (0,3) of the canonical bivariate
/// Q-labeling.
fn dodecahedron_p() -> [[f64; 6]; 6] {
    let s5 = 5f64.sqrt();
    [
        [1.0, 3.0, 6.0, 6.0, 3.0, 1.0],
        [1.0, s5, 2.0, -2.0, -s5, -1.0],
        [1.0, 1.0, -2.0, -2.0, 1.0, 1.0],
        [1.0, 0.0, -3.0, 3.0, 0.0, -1.0],
        [1.0, -2.0, 1.0, 1.0, -2.0, 1.0],
        [1.0, -s5, 2.0, -2.0, s5, -1.0],
    ]
}

const DODECAHEDRON_MULTIPLICITIES: [f64; 6] = [1.0, 3.0, 5.0, 4.0, 4.0, 3.0];

#[test]
fn criterion_01_dodecahedron_eigenmatrices() {
    let built = constructors::dodecahedron().unwrap();
    let (_, sp) = spectrum_of(&built.scheme);
    let p = dodecahedron_p();
    let valencies = [1.0, 3.0, 6.0, 6.0, 3.0, 1.0];
    for j in 0..6 {
        for i in 0..6 {
            let err = (sp.p_entry(j, i) - p[j][i]).abs();
            assert!(err <= MATRIX_TOL, "P[{j}][{i}] off by {err}");
            // Q from the pinned P via q_{ij} = m_j P_{ji} / k_i.
            let expected_q = DODECAHEDRON_MULTIPLICITIES[j] * p[j][i] / valencies[i];
            let err = (sp.q_entry(i, j) - expected_q).abs();
            assert!(err <= MATRIX_TOL, "Q[{i}][{j}] off by {err}");
        }
    }
    for (j, m) in DODECAHEDRON_MULTIPLICITIES.iter().enumerate() {
        assert!((sp.multiplicities()[j] - m).abs() <= MATRIX_TOL);
    }
    println!("criterion 1: PASS — dodecahedron P and Q match the printed eigenmatrices to 1e-6");
}

#[test]
fn criterion_02_dodecahedron_krein_and_check_q() {
    let built = constructors::dodecahedron().unwrap();
    let (_, sp) = spectrum_of(&built.scheme);
    // Rows/columns in the eigenspace order of dodecahedron_p; fractions exact.
    let l01: [[f64; 6]; 6] = [
        [0.0, 3.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 2.0, 0.0, 0.0, 0.0],
        [0.0, 6.0 / 5.0, 0.0, 8.0 / 5.0, 0.0, 1.0 / 5.0],
        [0.0, 0.0, 2.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 2.0],
        [0.0, 0.0, 1.0 / 3.0, 0.0, 8.0 / 3.0, 0.0],
    ];
    let l10: [[f64; 6]; 6] = [
        [0.0, 0.0, 0.0, 4.0, 0.0, 0.0],
        [0.0, 0.0, 8.0 / 3.0, 0.0, 4.0 / 3.0, 0.0],
        [0.0, 8.0 / 5.0, 0.0, 4.0 / 5.0, 0.0, 8.0 / 5.0],
        [1.0, 0.0, 1.0, 0.0, 2.0, 0.0],
        [0.0, 1.0, 0.0, 2.0, 0.0, 1.0],
        [0.0, 0.0, 8.0 / 3.0, 0.0, 4.0 / 3.0, 0.0],
    ];
    for (j, pinned) in [(1usize, &l01), (3usize, &l10)] {
        let m = sp.krein_l_matrix(j).unwrap();
        for r in 0..6 {
            for c in 0..6 {
                let err = (m[(r, c)] - pinned[r][c]).abs();
                assert!(err <= MATRIX_TOL, "L*_{j}[{r}][{c}] off by {err}");
            }
        }
    }
    let lab = built.q_labeling.as_ref().expect("q labeling");
    let expected: BTreeSet<Vec<usize>> =
        [[0, 0], [0, 1], [0, 2], [0, 3], [1, 0], [1, 1]].iter().map(|a| a.to_vec()).collect();
    assert_eq!(lab.domain(), expected);
    let report = check_q(&sp, lab, &MonomialOrder::grlex(2)).unwrap();
    assert!(report.verdict, "violations: {:?}", report.violations);
    assert!(univariate_q_check(&sp).is_none(), "dodecahedron is not univariate Q-polynomial");
    println!("criterion 2: PASS — Krein matrices L*01/L*10 match to 1e-6; bivariate check_Q true, univariate false");
}

#[test]
fn criterion_03_dodecahedron_dual_polynomials() {
    let built = constructors::dodecahedron().unwrap();
    let (_, sp) = spectrum_of(&built.scheme);
    let lab = built.q_labeling.as_ref().unwrap();
    // (multidegree, coefficient) pairs; x = first axis, y = second.
    let cases: [(&[usize; 2], &[(&[usize; 2], f64)]); 3] = [
        (&[0, 2], &[(&[0, 2], 5.0 / 6.0), (&[0, 0], -5.0 / 2.0)]),
        (&[0, 3], &[(&[0, 3], 5.0 / 2.0), (&[0, 1], -27.0 / 2.0), (&[1, 0], -6.0)]),
        (&[1, 1], &[(&[1, 1], 1.0), (&[0, 2], -4.0 / 3.0), (&[0, 0], 4.0)]),
    ];
    for (alpha, terms) in cases {
        let (poly, residual) = recover_v_star(&sp, lab, alpha.as_slice()).unwrap();
        assert!(residual <= MATRIX_TOL, "residual {residual} for v*_{alpha:?}");
        for (deg, expected) in terms {
            let got = poly.coeff(deg.as_slice());
            assert!((got - expected).abs() <= MATRIX_TOL, "v*_{alpha:?} coeff {deg:?}: {got}");
        }
        for (deg, got) in &poly.terms {
            let expected = terms
                .iter()
                .find(|(d, _)| d.as_slice() == deg.as_slice())
                .map_or(0.0, |(_, c)| *c);
            assert!((got - expected).abs() <= MATRIX_TOL, "stray term {deg:?} in v*_{alpha:?}");
        }
    }
    println!("criterion 3: PASS — v*_02, v*_03, v*_11 recovered within 1e-6");
}

#[test]
fn criterion_04_cube_power_not_bivariate() {
    let k2 = constructors::complete(2).unwrap().scheme;
    let built = constructors::direct_product(&[k2.clone(), k2.clone(), k2]).unwrap();
    let (tensor, sp) = spectrum_of(&built.scheme);
    assert!(search_p(&tensor, 2, &MonomialOrder::grlex(2)).is_empty());
    assert!(search_q(&sp, 2, &MonomialOrder::grlex(2)).is_empty());
    // The pruning bound itself, exactly: every generator pair spans at most
    // dimension 4 < 8.
    let id = tensor.identity_index();
    for i in 0..8 {
        for j in 0..i {
            if i == id || j == id {
                continue;
            }
            let dim_p = subalgebra_dimension_p(&tensor, &[i, j]);
            assert!(dim_p <= 4, "pair ({i},{j}) spans dimension {dim_p}");
            let dim_q = subalgebra_dimension_q(&sp, &[i, j], 1e-6);
            assert!(dim_q <= 4, "dual pair ({i},{j}) spans dimension {dim_q}");
        }
    }
    let cube: BTreeSet<Vec<usize>> = (0..8u32)
        .map(|m| (0..3).map(|b| ((m >> b) & 1) as usize).collect())
        .collect();
    let hits = search_p(&tensor, 3, &MonomialOrder::grlex(3));
    assert!(hits.iter().any(|h| h.labeling.domain() == cube));
    let hits = search_q(&sp, 3, &MonomialOrder::grlex(3));
    assert!(hits.iter().any(|h| h.labeling.domain() == cube));
    println!("criterion 4: PASS — K2^3 has no bivariate P/Q structure (span <= 4 < 8), trivariate cube found");
}

#[test]
fn criterion_05_extension_oracle_and_checks() {
    for base_built in [
        constructors::complete(2).unwrap(),
        constructors::complete(3).unwrap(),
        constructors::cycle(5).unwrap(),
    ] {
        let base = &base_built.scheme;
        let base_tensor = base.intersection_tensor().unwrap();
        let ell = base.class_count();
        for n in [2usize, 3] {
            let built = constructors::extension(base, n).unwrap();
            let (tensor, sp) = spectrum_of(&built.scheme);
            let lab = labeling_of(&built);
            for alpha in lab.domain() {
                for i in 1..=ell {
                    let oracle = extension_recurrence_oracle(&base_tensor, n, i, &alpha).unwrap();
                    let mut gen = vec![0usize; ell];
                    gen[i - 1] = 1;
                    let brute = product_coefficients(&tensor, lab, &gen, &alpha).unwrap();
                    assert_eq!(oracle, brute, "extension base |X|={} n={n} i={i} alpha={alpha:?}", base.size());
                }
            }
            let order = MonomialOrder::grlex(ell);
            assert!(check_p(&tensor, lab, &order).unwrap().verdict);
            let hits = search_q(&sp, ell, &order);
            let tau_domain = lab.domain();
            assert!(
                hits.iter().any(|h| h.labeling.domain() == tau_domain),
                "no Q-structure on the tau-domain for base |X|={} n={n}",
                base.size()
            );
        }
    }
    println!("criterion 5: PASS — extension recurrence exact for K2/K3/C5, n in {{2,3}}; check_P and check_Q hold");
}

#[test]
fn criterion_06_generalized_johnson() {
    let fiber = constructors::complete(3).unwrap().scheme;
    let fiber_tensor = fiber.intersection_tensor().unwrap();
    for (n, h) in [(3usize, 2usize), (4, 2)] {
        let built = constructors::generalized_johnson(&fiber, n, h).unwrap();
        let tensor = built.scheme.intersection_tensor().unwrap();
        let lab = labeling_of(&built);
        let m = fiber.class_count();
        for alpha in lab.domain() {
            for axis in 0..=m {
                let (gj_gen, mut gen) = if axis == 0 {
                    (GjGenerator::T, vec![0; m + 1])
                } else {
                    (GjGenerator::Value(axis), vec![0; m + 1])
                };
                gen[axis] = 1;
                let oracle =
                    generalized_johnson_oracle(&fiber_tensor, n, h, &gj_gen, &alpha).unwrap();
                let brute = product_coefficients(&tensor, lab, &gen, &alpha).unwrap();
                assert_eq!(oracle, brute, "GJ n={n} h={h} gen={gj_gen:?} alpha={alpha:?}");
            }
        }
        assert!(check_p(&tensor, lab, &MonomialOrder::grlex(m + 1)).unwrap().verdict);
        // Identity with the direct nonbinary Johnson construction.
        let direct = constructors::nonbinary_johnson(3, n, h).unwrap();
        assert_eq!(built.scheme.relation_matrix(), direct.scheme.relation_matrix());
    }
    println!("criterion 6: PASS — generalized Johnson coefficients exact, check_P holds, J_3(n,2) identity verified");
}

#[test]
fn criterion_07_attenuated_spaces() {
    for (q, n, m, l) in [(2usize, 2usize, 1usize, 1usize), (2, 3, 1, 1), (2, 3, 2, 1), (3, 2, 1, 1)] {
        let built = constructors::attenuated(q, n, m, l).unwrap();
        let tensor = built.scheme.intersection_tensor().unwrap();
        let lab = labeling_of(&built);
        for alpha in lab.domain() {
            let ij = (alpha[0], alpha[1]);
            for (which, gen) in [
                (AttenuatedGenerator::A10, vec![1, 0]),
                (AttenuatedGenerator::A01, vec![0, 1]),
            ] {
                let oracle = attenuated_recurrence_oracle(q, n, m, l, which, ij).unwrap();
                let brute = product_coefficients(&tensor, lab, &gen, &alpha).unwrap();
                assert_eq!(oracle, brute, "attenuated ({q},{n},{m},{l}) {which:?} alpha={alpha:?}");
            }
        }
        assert!(check_p(&tensor, lab, &MonomialOrder::grlex(2)).unwrap().verdict);
        if (q, n, m, l) == (2, 3, 2, 1) {
            // The l < m case: second coordinate capped at l, so the domain is
            // not a full box and the bivariate structure needs a genuine
            // monomial order rather than a type-(a,b) pair.
            assert!(l < m);
            assert!(lab.domain().iter().all(|a| a[1] <= l));
        }
    }
    println!("criterion 7: PASS — attenuated oracles exact and check_P holds for all four parameter sets");
}

#[test]
fn criterion_08_composition() {
    let outer = constructors::complete(3).unwrap().scheme;
    let fiber = constructors::cycle(5).unwrap().scheme;
    let built = constructors::composition(&outer, &fiber).unwrap();
    let (tensor, sp) = spectrum_of(&built.scheme);
    let lab = labeling_of(&built);
    let lex = MonomialOrder::lex(2);
    assert!(check_p(&tensor, lab, &lex).unwrap().verdict);

    let outer_t = outer.intersection_tensor().unwrap();
    let fiber_t = fiber.intersection_tensor().unwrap();
    let n = outer.class_count();
    let m = fiber.class_count();
    let y = fiber.size() as i64;
    let in_domain = |a: &[usize]| lab.index_of(a).is_some();
    let coeffs = |gen: &[usize], alpha: &[usize]| {
        product_coefficients(&tensor, lab, gen, alpha).expect("in-domain product")
    };
    let map = |entries: Vec<(Vec<usize>, i64)>| -> std::collections::BTreeMap<Vec<usize>, i64> {
        entries.into_iter().filter(|&(ref a, c)| c != 0 && in_domain(a)).collect()
    };
    // The five displayed product expansions of the composition proof,
    // instanced over every in-range index.
    for j in 0..=m {
        let mut expected = vec![(vec![0, j], fiber_t.p(j, 1, j))];
        if j >= 1 {
            expected.push((vec![0, j - 1], fiber_t.p(j - 1, 1, j)));
        }
        if j + 1 <= m {
            expected.push((vec![0, j + 1], fiber_t.p(j + 1, 1, j)));
        }
        assert_eq!(coeffs(&[0, 1], &[0, j]), map(expected), "A01 A0{j}");
        let valency = fiber_t.valencies()[j];
        assert_eq!(coeffs(&[1, 0], &[0, j]), map(vec![(vec![1, 0], valency)]), "A10 A0{j}");
    }
    for i in 1..=n {
        let k1 = fiber_t.valencies()[1];
        assert_eq!(coeffs(&[0, 1], &[i, 0]), map(vec![(vec![i, 0], k1)]), "A01 A{i}0");
        let mut expected: Vec<(Vec<usize>, i64)> = if i == 1 {
            // A10 A10 spreads the identity term over the whole fiber block.
            (0..=m).map(|j| (vec![0, j], y * outer_t.p(0, 1, 1))).collect()
        } else {
            vec![(vec![i - 1, 0], y * outer_t.p(i - 1, 1, i))]
        };
        expected.push((vec![i, 0], y * outer_t.p(i, 1, i)));
        if i + 1 <= n {
            expected.push((vec![i + 1, 0], y * outer_t.p(i + 1, 1, i)));
        }
        assert_eq!(coeffs(&[1, 0], &[i, 0]), map(expected), "A10 A{i}0");
    }

    // Dual side: lex Q-structure on {(j,0)} ∪ {(0,i)}.
    let dual: BTreeSet<Vec<usize>> = (1..=m)
        .map(|j| vec![j, 0])
        .chain((0..=n).map(|i| vec![0, i]))
        .collect();
    let hits = search_q(&sp, 2, &lex);
    assert!(hits.iter().any(|h| h.labeling.domain() == dual), "no lex Q-structure on the dual domain");
    println!("criterion 8: PASS — composition K3 over C5: check_P/check_Q on lex, all product identities exact");
}

type Rat = BigRational;

fn rat_matrix_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let c = a.len();
    let mut out = vec![vec![Rat::zero(); c]; c];
    for r in 0..c {
        for k in 0..c {
            if a[r][k].is_zero() {
                continue;
            }
            for s in 0..c {
                let prod = &a[r][k] * &b[k][s];
                out[r][s] += prod;
            }
        }
    }
    out
}

/// Evaluate a recovered ideal generator at the regular representation and
/// assert it vanishes identically — w(𝐀) = 0, exactly.
fn assert_vanishes(tensor: &IntersectionTensor, lab: &Labeling, poly: &schemekit::poly::RatPoly) {
    let c = tensor.relation_count();
    let identity: Vec<Vec<Rat>> = (0..c)
        .map(|r| (0..c).map(|s| if r == s { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    let regular: Vec<Vec<Vec<Rat>>> = (0..lab.ell())
        .map(|axis| {
            let g = lab.generator(axis).expect("generator");
            tensor
                .regular_matrix(g)
                .into_iter()
                .map(|row| row.into_iter().map(|x| Rat::from(BigInt::from(x))).collect())
                .collect()
        })
        .collect();
    let mut total = vec![vec![Rat::zero(); c]; c];
    for (deg, coeff) in poly.terms() {
        let mut mat = identity.clone();
        for (axis, &e) in deg.iter().enumerate() {
            for _ in 0..e {
                mat = rat_matrix_mul(&mat, &regular[axis]);
            }
        }
        for r in 0..c {
            for s in 0..c {
                let scaled = coeff * &mat[r][s];
                total[r][s] += scaled;
            }
        }
    }
    for row in &total {
        for x in row {
            assert!(x.is_zero(), "w(A) has a nonzero entry");
        }
    }
}

#[test]
fn criterion_09_groebner_claims() {
    // (scheme, order, run the independent Buchberger oracle)
    let k2 = constructors::complete(2).unwrap().scheme;
    let cases: Vec<(&str, Built, MonomialOrder, bool)> = vec![
        ("dodecahedron", constructors::dodecahedron().unwrap(), MonomialOrder::grlex(1), false),
        ("K2xK2", constructors::direct_product(&[k2.clone(), k2.clone()]).unwrap(), MonomialOrder::grlex(2), true),
        ("K2^3", constructors::direct_product(&[k2.clone(), k2.clone(), k2.clone()]).unwrap(), MonomialOrder::grlex(3), false),
        ("H(3,2)", constructors::extension(&k2, 3).unwrap(), MonomialOrder::grlex(1), true),
        ("S2(K3)", constructors::extension(&constructors::complete(3).unwrap().scheme, 2).unwrap(), MonomialOrder::grlex(1), false),
        ("GJ(K3,3,2)", constructors::generalized_johnson(&constructors::complete(3).unwrap().scheme, 3, 2).unwrap(), MonomialOrder::grlex(2), false),
        ("attenuated(2,2,1,1)", constructors::attenuated(2, 2, 1, 1).unwrap(), MonomialOrder::grlex(2), true),
        ("attenuated(2,3,2,1)", constructors::attenuated(2, 3, 2, 1).unwrap(), MonomialOrder::grlex(2), false),
        ("composition(K3,C5)", constructors::composition(&constructors::complete(3).unwrap().scheme, &constructors::cycle(5).unwrap().scheme).unwrap(), MonomialOrder::lex(2), false),
    ];
    for (name, built, order, buchberger) in cases {
        let tensor = built.scheme.intersection_tensor().unwrap();
        let lab = labeling_of(&built);
        let gens = ideal_generators(&tensor, lab).unwrap();
        assert!(!gens.is_empty(), "{name}: no ideal generators");
        for (_, poly) in &gens {
            assert_vanishes(&tensor, lab, poly);
        }
        let report = verify_groebner(&tensor, lab, &order, buchberger).unwrap();
        assert!(report.verdict, "{name}: {report:?}");
        assert_eq!(report.standard_monomials, tensor.relation_count(), "{name}");
        assert!(report.staircase_ok && report.reductions_ok, "{name}");
        if buchberger {
            assert_eq!(report.buchberger_ok, Some(true), "{name}");
        }
    }
    println!("criterion 9: PASS — ideal generators vanish exactly; staircase and Buchberger checks hold");
}

#[test]
fn criterion_10_property_suite() {
    let k2 = constructors::complete(2).unwrap().scheme;
    let schemes: Vec<(&str, RelationScheme)> = vec![
        ("K2", k2.clone()),
        ("K3", constructors::complete(3).unwrap().scheme),
        ("C5", constructors::cycle(5).unwrap().scheme),
        ("C7", constructors::cycle(7).unwrap().scheme),
        ("dodecahedron", constructors::dodecahedron().unwrap().scheme),
        ("H(3,2)", constructors::hamming(3, 2).unwrap().scheme),
        ("J(5,2)", constructors::johnson(5, 2).unwrap().scheme),
        ("J_3(3,2)", constructors::nonbinary_johnson(3, 3, 2).unwrap().scheme),
        ("K2^3", constructors::direct_product(&[k2.clone(), k2.clone(), k2]).unwrap().scheme),
        ("S2(C5)", constructors::extension(&constructors::cycle(5).unwrap().scheme, 2).unwrap().scheme),
        ("K3 wr C5", constructors::composition(&constructors::complete(3).unwrap().scheme, &constructors::cycle(5).unwrap().scheme).unwrap().scheme),
        ("GJ(K3,4,2)", constructors::generalized_johnson(&constructors::complete(3).unwrap().scheme, 4, 2).unwrap().scheme),
        ("attenuated(2,3,2,1)", constructors::attenuated(2, 3, 2, 1).unwrap().scheme),
        ("attenuated(3,2,1,1)", constructors::attenuated(3, 2, 1, 1).unwrap().scheme),
    ];
    for (name, scheme) in &schemes {
        assert!(scheme.size() <= 2000, "{name}");
        // Full triple-count cross-check of the axioms and every p^k_ij.
        let tensor = scheme.intersection_tensor_checked(true).unwrap_or_else(|e| panic!("{name}: {e}"));
        let sp = Spectrum::compute(&tensor, TOL, SEED).unwrap();
        let idem_residual = sp.verify_on_scheme(scheme);
        assert!(idem_residual <= 1e-8, "{name}: idempotent residual {idem_residual}");
        assert!(sp.krein_min() >= -1e-8, "{name}: Krein minimum {}", sp.krein_min());
        // check_P at ell = 1 must agree with the three-term-recurrence check.
        let univariate = univariate_p_check(&tensor);
        let hits = search_p(&tensor, 1, &MonomialOrder::grlex(1));
        assert_eq!(univariate.is_some(), !hits.is_empty(), "{name}: ell=1 disagreement");
        if let Some(ordering) = univariate {
            let lab = Labeling::from_pairs(
                1,
                ordering.iter().enumerate().map(|(d, &class)| (vec![d], class)),
            )
            .unwrap();
            assert!(check_p(&tensor, &lab, &MonomialOrder::grlex(1)).unwrap().verdict, "{name}");
        }
    }
    // Monomial-order axioms, exhaustively on a small grid.
    for order in [MonomialOrder::lex(2), MonomialOrder::grlex(2), MonomialOrder::grlex(3)] {
        let arity = order.arity();
        let grid: Vec<Vec<usize>> = (0..4usize.pow(arity as u32))
            .map(|mut code| {
                (0..arity)
                    .map(|_| {
                        let digit = code % 4;
                        code /= 4;
                        digit
                    })
                    .collect()
            })
            .collect();
        let origin = vec![0usize; arity];
        for a in &grid {
            assert!(order.le(&origin, a), "origin must be minimal");
            for b in &grid {
                let ab = order.le(a, b);
                let ba = order.le(b, a);
                assert!(ab || ba, "totality");
                if ab && ba {
                    assert_eq!(a, b, "antisymmetry");
                }
                for c in &grid {
                    if ab && order.le(b, c) {
                        assert!(order.le(a, c), "transitivity");
                    }
                    // Addition compatibility: a <= b implies a+c <= b+c.
                    if ab {
                        let ac: Vec<usize> = a.iter().zip(c).map(|(x, y)| x + y).collect();
                        let bc: Vec<usize> = b.iter().zip(c).map(|(x, y)| x + y).collect();
                        assert!(order.le(&ac, &bc), "translation invariance");
                    }
                }
            }
        }
    }
    println!("criterion 10: PASS — axioms, idempotents, Krein bounds, order axioms, ell=1 equivalence");
}
