//! The ten acceptance criteria, each checked exactly and reported on one line.
//!
//! Runs without the test harness so the report is always printed. Exits
//! nonzero when a criterion fails, except for the one documented conflict in
//! criterion 9 (see `criterion_9`).

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use lieform::catalog::{
    abelian, g1_alpha, g_lambda, heisenberg, nintot_family, overfprop_witness, r3_lambda, r3_lambda_plus_abelian,
};
use lieform::decompose::{
    count_forms, decompose_indecomposable, krull_schmidt_match, verify_decomposition, MatchResult,
};
use lieform::fields::{galois_group, parse_element, Field, FieldElement};
use lieform::galois::{
    conjugate, defined_over_witness_check, extend_scalars, restrict_scalars, underlying_iso_from_sigma,
    verify_sumconjugate,
};
use lieform::liealg::LieAlgebra;
use lieform::linalg::Matrix;
use lieform::oracle::iso_oracle;
use lieform::pfaffian::{
    invariant_c, invariant_i, invariant_j, invariant_s, invariant_t, pfaffian_form, pfaffian_of_matrix,
    refute_isomorphism_by_c, CVerdict, MultiPoly,
};
use lieform::Error;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion: whether it holds and a short explanation.
struct Verdict {
    pass: bool,
    detail: String,
    /// A failure analysed as unattainable; reported but not fatal.
    known_conflict: bool,
}

type Criterion = (&'static str, fn() -> Verdict);

fn check(cond: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass: cond,
        detail: detail.into(),
        known_conflict: false,
    }
}

fn el(f: &Field, s: &str) -> FieldElement {
    parse_element(f, s).unwrap()
}

fn within(t: Instant, budget: Duration) -> bool {
    t.elapsed() <= budget
}

/// `x⁴ + λx²y² + y⁴`, built directly.
fn f_lambda(lambda: &FieldElement) -> MultiPoly {
    let f = lambda.field();
    MultiPoly::from_terms(
        f,
        2,
        [
            (vec![4, 0], FieldElement::one(f)),
            (vec![2, 2], lambda.clone()),
            (vec![0, 4], FieldElement::one(f)),
        ],
    )
    .unwrap()
}

fn criterion_1() -> Verdict {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_lieform"))
        .args(["invariant-c", "g_lambda[Q(i)](lambda=i)"])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let fast = within(t, Duration::from_secs(1));
    check(
        out.status.code() == Some(0) && stdout == "2\n" && fast,
        format!(
            "printed {:?}, exit {}, {:.2?}",
            stdout.trim(),
            out.status.code().unwrap_or(-1),
            t.elapsed()
        ),
    )
}

fn criterion_2() -> Verdict {
    let f = qi();
    let mut ok = true;
    for s in ["0", "1", "1+i"] {
        let t = Instant::now();
        let lambda = el(&f, s);
        let form = pfaffian_form(&g_lambda(&f, &lambda).unwrap()).unwrap().form;
        ok &= form == f_lambda(&lambda) && within(t, Duration::from_secs(1));
    }
    check(ok, "f = x^4 + lambda x^2 y^2 + y^4 for lambda in {0, 1, 1+i}")
}

fn criterion_3() -> Verdict {
    let mut rng = rng(31);
    let mut fields = vec![Field::rationals(); 10];
    fields.extend(vec![qi(); 10]);
    let mut ok = 0;
    for f in &fields {
        let lambda = element(&mut rng, f, 20);
        let form = pfaffian_form(&g_lambda(f, &lambda).unwrap()).unwrap().form;
        let one = FieldElement::one(f);
        let three = FieldElement::from_int(f, 3);
        let s = &(&three * &(&lambda * &lambda)) + &one;
        let t = &lambda - &lambda.pow(3);
        if invariant_s(&form).unwrap() == s && invariant_t(&form).unwrap() == t {
            ok += 1;
        }
    }
    check(ok == 20, format!("{ok}/20 random lambda (10 rational, 10 Gaussian)"))
}

fn criterion_4() -> Verdict {
    let t = Instant::now();
    let (q, qi, s2) = (Field::rationals(), qi(), sqrt2());
    let cases: Vec<(&str, LieAlgebra)> = vec![
        ("h3(Q(i))", heisenberg(&qi)),
        ("h3(Q(sqrt2))", heisenberg(&s2)),
        ("r3_i(Q(i))", r3_lambda(&qi, &el(&qi, "i")).unwrap()),
        ("g_(1+i)(Q(i))", g_lambda(&qi, &el(&qi, "1+i")).unwrap()),
        ("abelian^3(Q(sqrt2))", abelian(&s2, 3)),
    ];
    let failed: Vec<&str> = cases
        .iter()
        .filter(|(_, l)| !verify_sumconjugate(l, &q).unwrap().verified())
        .map(|(n, _)| *n)
        .collect();
    let fast = within(t, Duration::from_secs(5));
    check(
        failed.is_empty() && fast,
        format!("5 algebras over Q, failures {failed:?}, {:.2?}", t.elapsed()),
    )
}

fn catalog_over(f: &Field) -> Vec<LieAlgebra> {
    let theta = FieldElement::generator(f);
    let one_plus = &FieldElement::one(f) + &theta;
    let group = galois_group(f, &Field::rationals()).unwrap();
    vec![
        heisenberg(f),
        abelian(f, 3),
        g_lambda(f, &one_plus).unwrap(),
        r3_lambda(f, &theta).unwrap(),
        r3_lambda_plus_abelian(f, &theta).unwrap(),
        g1_alpha(f, &one_plus).unwrap(),
        nintot_family(f, &one_plus, 2, 1, &group.elements[1]).unwrap(),
    ]
}

fn criterion_5() -> Verdict {
    let q = Field::rationals();
    let (mut total, mut ok) = (0, 0);
    for f in [qi(), sqrt2()] {
        let group = galois_group(&f, &q).unwrap();
        for l in catalog_over(&f) {
            for sigma in &group.elements {
                total += 1;
                let iso = underlying_iso_from_sigma(&l, &q, sigma).unwrap();
                if iso.check.preserves_bracket && iso.check.bijective {
                    ok += 1;
                }
            }
        }
    }
    check(
        ok == total,
        format!("{ok}/{total} (algebra, sigma) pairs over Q(i)/Q and Q(sqrt2)/Q"),
    )
}

fn criterion_6() -> Verdict {
    let f = qi();
    let q = Field::rationals();
    let g = g_lambda(&f, &el(&f, "1+i")).unwrap();
    let mut details = Vec::new();
    let mut ok = true;
    for k in 1..=3 {
        let t = Instant::now();
        let l = LieAlgebra::direct_sum_all(&vec![g.clone(); k]).unwrap();
        let fc = count_forms(&l, &q, iso_oracle, None).unwrap();
        let mut multisets: Vec<Vec<String>> = fc
            .witnesses
            .iter()
            .map(|w| {
                let mut cs: Vec<String> = w
                    .components
                    .iter()
                    .map(|c| invariant_c(c).unwrap().to_string())
                    .collect();
                cs.sort();
                cs
            })
            .collect();
        let n = multisets.len();
        multisets.sort();
        multisets.dedup();
        let fast = k < 3 || within(t, Duration::from_secs(30));
        ok &= fc.count == k + 1 && n == k + 1 && multisets.len() == k + 1 && fast;
        details.push(format!("k={k}: {} ({:.1?})", fc.count, t.elapsed()));
    }
    let h = count_forms(&heisenberg(&f), &q, iso_oracle, None).unwrap().count;
    ok &= h == 1;
    details.push(format!("h3: {h}"));
    check(ok, details.join(", "))
}

fn criterion_7() -> Verdict {
    let q = Field::rationals();
    let h = heisenberg(&q);
    let hh = h.direct_sum(&h).unwrap();
    let standard = decompose_indecomposable(&hh, None).unwrap();
    let two = standard.summands.len() == 2 && standard.all_certified();
    // <X1, Y1 + Z2, Z1> and <X2, Y2, Z2> in the basis X1, Y1, Z1, X2, Y2, Z2.
    let v = |x: [i64; 6]| x.iter().map(|&c| FieldElement::from_int(&q, c)).collect::<Vec<_>>();
    let alt = vec![
        vec![v([1, 0, 0, 0, 0, 0]), v([0, 1, 0, 0, 0, 1]), v([0, 0, 1, 0, 0, 0])],
        vec![v([0, 0, 0, 1, 0, 0]), v([0, 0, 0, 0, 1, 0]), v([0, 0, 0, 0, 0, 1])],
    ];
    let alt_ok = verify_decomposition(&hh, &alt);
    let mut alt_dec = standard.clone();
    for (s, b) in alt_dec.summands.iter_mut().zip(alt) {
        s.basis = b;
    }
    let matched = matches!(
        krull_schmidt_match(&standard, &alt_dec, iso_oracle).unwrap(),
        MatchResult::Matched(_)
    );
    let f = qi();
    let g = |s: &str| g_lambda(&f, &el(&f, s)).unwrap();
    let a = decompose_indecomposable(&g("1+i").direct_sum(&g("1-i")).unwrap(), None).unwrap();
    let b = decompose_indecomposable(&g("1+i").direct_sum(&g("1+i")).unwrap(), None).unwrap();
    let refuted = a.all_certified()
        && b.all_certified()
        && matches!(
            krull_schmidt_match(&a, &b, iso_oracle).unwrap(),
            MatchResult::Refuted(_)
        );
    check(
        two && alt_ok && matched && refuted,
        format!("2 summands: {two}, alternative verifies: {alt_ok}, matches: {matched}, refuted: {refuted}"),
    )
}

fn criterion_8() -> Verdict {
    let q = Field::rationals();
    let f = qi();
    let w = overfprop_witness(&q, &FieldElement::zero(&f), &el(&f, "i")).unwrap();
    let x = &w.x_algebra;
    let c = |i, j, k| x.structure_constant(i, j, k);
    let (zero, one, minus_i) = (FieldElement::zero(&f), FieldElement::one(&f), el(&f, "-i"));
    let mut brackets = true;
    for k in 0..3 {
        brackets &= c(0, 1, k) == if k == 1 { one.clone() } else { zero.clone() };
        brackets &= c(0, 2, k) == if k == 2 { minus_i.clone() } else { zero.clone() };
        brackets &= c(1, 2, k) == zero;
    }
    let back = w.basis_change.inverse().unwrap();
    let defined = defined_over_witness_check(x, &q, &back).unwrap();
    check(
        brackets && defined,
        format!("X-basis brackets exact: {brackets}, defined over Q: {defined}"),
    )
}

const CASES: usize = 100;

fn pfaffian_squares() -> usize {
    let q = Field::rationals();
    let mut rng = rng(91);
    (0..CASES)
        .filter(|case| {
            let n = 2 + case % 7;
            let mut m = Matrix::zeros(&q, n, n);
            for a in 0..n {
                for b in a + 1..n {
                    let x = FieldElement::from_rational(&q, rational(&mut rng, 4));
                    m.set(b, a, -&x);
                    m.set(a, b, x);
                }
            }
            let polys: Vec<Vec<MultiPoly>> = (0..n)
                .map(|a| (0..n).map(|b| MultiPoly::constant(m.get(a, b).clone(), 1)).collect())
                .collect();
            let pf = pfaffian_of_matrix(&polys).unwrap().coeff(&[0]);
            &pf * &pf == m.det().unwrap()
        })
        .count()
}

fn quartic(rng: &mut ChaCha8Rng, f: &Field) -> MultiPoly {
    MultiPoly::from_terms(
        f,
        2,
        (0..5u32).map(|k| (vec![4 - k, k], FieldElement::from_rational(f, rational(rng, 5)))),
    )
    .unwrap()
}

fn sl2(rng: &mut ChaCha8Rng, f: &Field) -> Matrix {
    let mut a = Matrix::identity(f, 2);
    for k in 0..3 {
        let mut s = Matrix::identity(f, 2);
        let (r, c) = if k % 2 == 0 { (0, 1) } else { (1, 0) };
        s.set(r, c, FieldElement::from_rational(f, rational(rng, 3)));
        a = a.mul(&s).unwrap();
    }
    a
}

/// Counts of cases where the printed `S, T` and the classical `I, J` are
/// unchanged by a random `SL₂(Q)` substitution.
fn sl2_invariance() -> (usize, usize) {
    let f = qi();
    let mut rng = rng(92);
    let (mut st, mut ij) = (0, 0);
    for _ in 0..CASES {
        let p = quartic(&mut rng, &f);
        let pa = p.substitute_linear(&sl2(&mut rng, &f)).unwrap();
        if invariant_s(&pa).unwrap() == invariant_s(&p).unwrap()
            && invariant_t(&pa).unwrap() == invariant_t(&p).unwrap()
        {
            st += 1;
        }
        if invariant_i(&pa).unwrap() == invariant_i(&p).unwrap()
            && invariant_j(&pa).unwrap() == invariant_j(&p).unwrap()
        {
            ij += 1;
        }
    }
    (st, ij)
}

fn homogeneity() -> usize {
    let f = qi();
    let mut rng = rng(93);
    (0..CASES)
        .filter(|_| {
            let p = quartic(&mut rng, &f);
            let k = nonzero_element(&mut rng, &f, 4);
            let kp = p.scale(&k);
            invariant_s(&kp).unwrap() == &(&k * &k) * &invariant_s(&p).unwrap()
                && invariant_t(&kp).unwrap() == &k.pow(3) * &invariant_t(&p).unwrap()
        })
        .count()
}

fn functoriality() -> usize {
    let e = biquadratic();
    let group = galois_group(&e, &Field::rationals()).unwrap();
    let mut rng = rng(94);
    (0..CASES)
        .filter(|_| {
            let l = algebra(&mut rng, &e);
            let s = &group.elements[rng.gen_range(0..4)];
            let t = &group.elements[rng.gen_range(0..4)];
            let twice = conjugate(&conjugate(&l, s).unwrap().0, t).unwrap().0;
            let once = conjugate(&l, &t.compose(s).unwrap()).unwrap().0;
            twice.constants() == once.constants()
        })
        .count()
}

fn dimension_formula() -> usize {
    let e = biquadratic();
    let mut rng = rng(95);
    (0..CASES)
        .filter(|_| {
            let l = algebra(&mut rng, &e);
            let f = e.level(rng.gen_range(0..=e.depth())).unwrap();
            restrict_scalars(&l, &f).unwrap().0.dim() == e.degree_over(&f).unwrap() * l.dim()
        })
        .count()
}

fn jacobi_preserved() -> usize {
    let e = biquadratic();
    let qi = e.base().unwrap().clone();
    let group = galois_group(&e, &Field::rationals()).unwrap();
    let mut rng = rng(96);
    (0..CASES)
        .filter(|case| {
            let l = algebra(&mut rng, &e);
            let small = algebra(&mut rng, &qi);
            let produced = [
                conjugate(&l, &group.elements[case % 4]).unwrap().0,
                restrict_scalars(&small, &Field::rationals()).unwrap().0,
                extend_scalars(&small, &e).unwrap().0,
                l.direct_sum(&small.map_constants(&e, |c| c.lift_to(&e)).unwrap())
                    .unwrap(),
                l.change_basis(&invertible(&mut rng, &e, l.dim())).unwrap(),
                g_lambda(&e, &element(&mut rng, &e, 3)).unwrap(),
            ];
            produced.iter().all(|p| jacobi_holds(&mut rng, p, 2))
        })
        .count()
}

/// All sub-suites must hold except `SL₂` invariance of the printed `S, T`:
/// those formulas use raw coefficients, are invariant only under the diagonal
/// torus and `(x, y) ↦ (y, −x)`, and no `SL₂`-invariant of degree 2 can equal
/// `3λ² + 1` on `f_λ` as criterion 3 requires. The classical normalization
/// `I, J` is checked in its place and must be fully invariant.
fn criterion_9() -> Verdict {
    let pf = pfaffian_squares();
    let (st, ij) = sl2_invariance();
    let hom = homogeneity();
    let fun = functoriality();
    let dim = dimension_formula();
    let jac = jacobi_preserved();
    let detail = format!(
        "Pf^2=det {pf}/{CASES}, SL2 printed S,T {st}/{CASES}, SL2 classical I,J {ij}/{CASES}, scaling {hom}/{CASES}, \
         functoriality {fun}/{CASES}, restriction dim {dim}/{CASES}, Jacobi {jac}/{CASES}"
    );
    let rest = [pf, ij, hom, fun, dim, jac].iter().all(|&n| n == CASES);
    Verdict {
        pass: rest && st == CASES,
        known_conflict: rest && st < CASES,
        detail,
    }
}

fn criterion_10() -> Verdict {
    let f = qi();
    let g = |s: &str| g_lambda(&f, &el(&f, s)).unwrap();
    let inconclusive = refute_isomorphism_by_c(&g("i"), &g("-i")) == CVerdict::Inconclusive;
    let vanishes = invariant_c(&g("1")) == Err(Error::TVanishes);
    let q = Field::rationals();
    let one = FieldElement::one(&q);
    let bad = LieAlgebra::new(&q, 3, [(1, 2, 1, one.clone()), (2, 3, 2, one.clone()), (3, 1, 3, one)]);
    let rejected = matches!(bad, Err(Error::JacobiFailure(1, 2, 3)));
    check(
        inconclusive && vanishes && rejected,
        format!("g_i vs g_-i inconclusive: {inconclusive}, c(g_1) TVanishes: {vanishes}, triple (1, 2, 3) reported: {rejected}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("c(i) = 2 via the CLI", criterion_1),
        ("Pfaffian form of g_lambda", criterion_2),
        ("S and T of f_lambda", criterion_3),
        ("sum of conjugates", criterion_4),
        ("underlying isomorphisms from sigma", criterion_5),
        ("counting forms", criterion_6),
        ("Krull-Schmidt suite", criterion_7),
        ("F-form witness for r_3,i", criterion_8),
        ("property suites", criterion_9),
        ("negative controls", criterion_10),
    ];
    let mut fatal = 0;
    let mut passed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| check(false, "panicked"));
        let status = if v.pass {
            passed += 1;
            "PASS"
        } else if v.known_conflict {
            "FAIL (known conflict)"
        } else {
            fatal += 1;
            "FAIL"
        };
        println!(
            "criterion {:>2} {status}: {name} [{}] ({:.1?})",
            n + 1,
            v.detail,
            t.elapsed()
        );
    }
    println!("{passed}/10 criteria pass");
    if fatal == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
