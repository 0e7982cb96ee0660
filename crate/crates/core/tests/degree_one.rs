use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realdp::dp1::*;
use realdp::invforms::{BinaryForm, PointGroup2D};
use realdp::picard::PicardLattice;
use realdp::weyl::{minus_on_kperp, Isometry};
use realdp::{Matrix, Rational};

fn eval(f: &BinaryForm, t: f64) -> f64 {
    let c = f.rational_coeffs().unwrap();
    let k = c.len() - 1;
    c.iter()
        .enumerate()
        .map(|(j, q)| {
            let v = q.numer().to_string().parse::<f64>().unwrap() / q.denom().to_string().parse::<f64>().unwrap();
            v * t.powi((k - j) as i32)
        })
        .sum()
}

fn to_f64(q: &Rational) -> f64 {
    q.numer().to_string().parse::<f64>().unwrap() / q.denom().to_string().parse::<f64>().unwrap()
}

/// Floating bisection on a sign change of the dehomogenized form.
fn refine(f: &BinaryForm, mut lo: f64, mut hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    let slo = eval(f, lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if eval(f, mid).signum() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Local model of the fiber cubic z³ + p z + q at its double root r: the cubic is
/// ≈ 3r (z − r)², so w² = cubic has two real branches iff the cubic is positive on
/// both sides of r.
fn local_model_kind(p: f64, q: f64) -> FiberKind {
    let r0 = (-p / 3.0).max(0.0).sqrt();
    let cubic = |z: f64| z * z * z + p * z + q;
    let r = if cubic(r0).abs() < cubic(-r0).abs() { r0 } else { -r0 };
    let d = 1e-3 * (1.0 + r.abs());
    if cubic(r + d) > 0.0 && cubic(r - d) > 0.0 {
        FiberKind::Crunode
    } else {
        FiberKind::Acnode
    }
}

fn random_surface(rng: &mut ChaCha8Rng) -> DP1Surface {
    loop {
        let f4: Vec<i64> = (0..5).map(|_| rng.gen_range(-4..=4)).collect();
        let f6: Vec<i64> = (0..7).map(|_| rng.gen_range(-4..=4)).collect();
        if let Ok(s) = DP1Surface::from_ints(&f4, &f6) {
            if s.is_squarefree() {
                return s;
            }
        }
    }
}

#[test]
fn sign_rule_matches_local_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..20 {
        let s = random_surface(&mut rng);
        for fiber in classify_fibers(&s).unwrap() {
            let (p, q) = match &fiber.at {
                BasePoint::Finite(iv) => {
                    let t = refine(&s.discriminant(), to_f64(&iv.lo), to_f64(&iv.hi));
                    (eval(s.f4(), t), eval(s.f6(), t))
                }
                BasePoint::Infinity => {
                    let c4 = s.f4().rational_coeffs().unwrap();
                    let c6 = s.f6().rational_coeffs().unwrap();
                    (to_f64(&c4[0]), to_f64(&c6[0]))
                }
            };
            if q.abs() < 1e-2 {
                continue;
            }
            assert_eq!(fiber.kind, local_model_kind(p, q), "{:?} {:?}", s.f4(), s.f6());
            checked += 1;
        }
    }
    assert!(checked >= 20, "only {checked} fibers checked");
}

#[test]
fn double_root_factorization() {
    // (z − r)²(z + 2r) = z³ − 3r² z + 2r³
    for r in [-3.0f64, -0.5, 0.5, 2.0] {
        let (p, q) = (-3.0 * r * r, 2.0 * r * r * r);
        let expected = if r > 0.0 { FiberKind::Crunode } else { FiberKind::Acnode };
        assert_eq!(local_model_kind(p, q), expected);
    }
}

#[test]
fn fiber_examples() {
    // f4 = 0: nodes where f6 vanishes never occur; f6 = x⁶ − y⁶ gives a double root
    let s = DP1Surface::from_ints(&[0; 5], &[1, 0, 0, 0, 0, 0, -1]).unwrap();
    assert!(!s.is_squarefree());

    // f4 = −3(x² + y²)², f6 negative everywhere: all nodes acnodes
    let s = DP1Surface::from_ints(&[-3, 0, -6, 0, -3], &[-1, 0, 0, 0, 0, 0, -3]).unwrap();
    let r = euler_heuristic(&s).unwrap();
    assert!(r.fibers.iter().all(|f| f.kind == FiberKind::Acnode));
    assert_eq!(r.euler, r.fibers.len() as i64);
    assert_eq!(r.verdict, Verdict::Inconclusive);

    // no real discriminant roots
    let s = DP1Surface::from_ints(&[1, 0, 0, 0, 1], &[1, 0, 0, 0, 0, 0, 1]).unwrap();
    let r = euler_heuristic(&s).unwrap();
    assert_eq!((r.euler, r.fibers.len(), r.verdict), (0, 0, Verdict::Inconclusive));
}

#[test]
fn cusp_where_f4_and_f6_meet() {
    // f4 = x y³, f6 = x (x⁵ + y⁵): f4 and f6 share the simple root x = 0
    let s = DP1Surface::from_ints(&[0, 1, 0, 0, 0], &[1, 0, 0, 0, 0, 1, 0]).unwrap();
    let fibers = classify_fibers(&s).unwrap();
    let cusps: Vec<_> = fibers.iter().filter(|f| f.kind == FiberKind::Cusp).collect();
    assert_eq!(cusps.len(), 1);
    assert_eq!(euler_heuristic(&s).unwrap().euler, fibers.iter().map(|f| f.kind.euler()).sum::<i64>());
}

#[test]
fn certification() {
    let z6 = table8_group("Z/6").unwrap();
    // (x²+y²)³ + Re(x+iy)⁶ + Im(x+iy)⁶
    let s = DP1Surface::from_ints(&[1, 0, 2, 0, 1], &[2, 6, -12, -20, 18, 6, 0]).unwrap();
    assert!(table8_certify(&z6, &s));
    let s = DP1Surface::from_ints(&[1, 0, 2, 0, 1], &[2, 6, 0, -20, 0, 6, -2]).unwrap();
    assert!(!table8_certify(&z6, &s));

    let d4 = table8_group("D_4").unwrap();
    let s = DP1Surface::from_ints(&[1, 0, 1, 0, 1], &[1, 0, 0, 0, 0, 0, 2]).unwrap();
    assert!(!table8_certify(&d4, &s));
    let s = DP1Surface::from_ints(&[1, 0, 1, 0, 1], &[1, 0, 2, 0, 2, 0, 1]).unwrap();
    assert!(table8_certify(&d4, &s));

    let trivial = Dp1Group::standard_lift(PointGroup2D::cyclic(1));
    assert!(!trivial.contains_bertini);
    assert!(!table8_certify(&trivial, &s));
    let z3 = Dp1Group::standard_lift(PointGroup2D::cyclic(3));
    assert!(!z3.contains_bertini);
    assert!(TABLE8_ROWS.iter().all(|(n, _)| table8_group(n).unwrap().contains_bertini));
}

#[test]
fn star_configurations() {
    let lat = PicardLattice::new(1).unwrap();
    let g = a2_squared_example(&lat);
    assert_eq!(g.order(), 3);
    assert_eq!(g.trace() - 1, 2);
    let r = find_star_configurations(&lat, &g).unwrap();
    assert_eq!(r.fixed_classes, 12);
    assert_eq!(r.configurations.len(), 4);
    assert!(r.pairwise_asynchronized);
    for c in &r.configurations {
        assert!(c.is_valid(&lat));
        assert_eq!(lat.dot(&c.classes[0].0, &c.classes[3].0), 3);
    }
    for c in &r.configurations[..2] {
        assert!(c.classes.iter().all(|h| g.apply_class(h) == *h));
    }
    for c in &r.configurations[2..] {
        for i in 0..6 {
            assert_eq!(g.apply_class(&c.classes[i]), c.classes[(i + 2) % 6]);
        }
    }
    assert_eq!(r.block_matrix, expected_block_matrix());
    let mut inverse = Matrix::<Rational>::identity(8);
    for b in [4, 6] {
        let q = |v: i64| Rational::from_integer(v.into());
        inverse[(b, b)] = q(0);
        inverse[(b, b + 1)] = q(1);
        inverse[(b + 1, b)] = q(-1);
        inverse[(b + 1, b + 1)] = q(-1);
    }
    assert_eq!(r.block_matrix.inverse().unwrap(), inverse);
}

#[test]
fn star_search_rejects_other_elements() {
    let lat = PicardLattice::new(1).unwrap();
    let id = Isometry::identity(lat.rank());
    assert!(matches!(find_star_configurations(&lat, &id), Err(Dp1Error::NotTypeA2Squared)));
    let beta = minus_on_kperp(&lat).unwrap();
    assert!(matches!(find_star_configurations(&lat, &beta), Err(Dp1Error::NotTypeA2Squared)));
}

#[test]
fn bertini_twist_negates_the_trace() {
    let lat = PicardLattice::new(1).unwrap();
    let beta = minus_on_kperp(&lat).unwrap();
    let e = |i: usize| lat.basis(i);
    let frames = [vec![], vec![e(1).sub(&e(2))], vec![e(1).sub(&e(2)), e(3).sub(&e(4))]];
    for roots in frames {
        let sigma = realdp::weyl::reflection_product(&lat, &roots).unwrap();
        let twisted = beta.compose(&sigma);
        assert_eq!(twisted.trace() - 1, -(sigma.trace() - 1));
        assert_eq!(twisted, sigma.compose(&beta));
    }
}

fn mobius() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-3i64..=3).prop_filter("invertible", |m| m[0] * m[3] - m[1] * m[2] != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fiber_kinds_survive_base_changes(seed in any::<u64>(), m in mobius()) {
        let s = random_surface(&mut ChaCha8Rng::seed_from_u64(seed));
        let q = |v: i64| Rational::from_integer(v.into());
        let t = Matrix::from_rows(vec![vec![q(m[0]), q(m[1])], vec![q(m[2]), q(m[3])]]);
        let s2 = s.transform(&t).unwrap();
        let kinds = |s: &DP1Surface| {
            let mut k: Vec<FiberKind> = classify_fibers(s).unwrap().into_iter().map(|f| f.kind).collect();
            k.sort();
            k
        };
        prop_assert_eq!(kinds(&s), kinds(&s2));
    }

    #[test]
    fn euler_is_the_sum_of_fiber_contributions(seed in any::<u64>()) {
        let s = random_surface(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = euler_heuristic(&s).unwrap();
        let total: i64 = r.fibers.iter().map(|f| match f.kind {
            FiberKind::Acnode => 1,
            FiberKind::Crunode => -1,
            FiberKind::Cusp => 0,
        }).sum();
        prop_assert_eq!(r.euler, total);
        prop_assert_eq!(r.euler, r.acnodes as i64 - r.crunodes as i64);
        prop_assert_eq!(r.verdict == Verdict::Rational, r.euler < 0);
    }
}
