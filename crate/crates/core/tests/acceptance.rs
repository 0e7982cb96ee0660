//! Acceptance criteria 1 to 13, one line each. Runs without the libtest harness so that
//! every line is printed whether or not the criterion passes; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realdp::confgraphs::find_isomorphism;
use realdp::dp1::*;
use realdp::dp4::*;
use realdp::explicitlines::*;
use realdp::fixtures::expected;
use realdp::invforms::{invariant_subspace, same_span, BinaryForm, PointGroup2D};
use realdp::minimality::{fixed_sublattice_rank, invariant_rank, lefschetz_euler, ActionContext};
use realdp::picard::{line_incidence, PicardLattice};
use realdp::tables::rational_fingerprints;
use realdp::weyl::*;
use realdp::{Matrix, Rational};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn exceptional_counts() -> Outcome {
    let want = [(7, 3), (6, 6), (5, 10), (4, 16), (3, 27), (2, 56), (1, 240)];
    let got: Vec<(i64, usize)> = want.iter().map(|&(d, _)| (d, PicardLattice::new(d).unwrap().lines().len())).collect();
    ensure(got == want, format!("counts {got:?}"))?;
    Ok("3, 6, 10, 16, 27, 56, 240".into())
}

fn weyl_orders() -> Outcome {
    let mut got = Vec::new();
    for row in &expected().weyl_orders {
        let lat = PicardLattice::new(row.degree).unwrap();
        let order = close_group(&lat, &simple_reflections(&lat), 60_000).map_err(|e| e.to_string())?.order();
        ensure(order == row.order, format!("degree {} has order {order}, expected {}", row.degree, row.order))?;
        got.push(order);
    }
    Ok(format!("{got:?}"))
}

fn character_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut tested = 0;
    let mut orders = BTreeSet::new();
    while tested < 200 {
        let lat = PicardLattice::new(rng.gen_range(3..=6)).unwrap();
        let gens: Vec<Isometry> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let roots: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| lat.roots().choose(&mut rng).unwrap().clone()).collect();
                reflection_product(&lat, &roots).unwrap()
            })
            .collect();
        let Ok(group) = close_group(&lat, &gens, 5_000) else { continue };
        orders.insert(group.order());
        let ctx = ActionContext::new(lat, group, None).unwrap();
        let a = invariant_rank(&ctx).map_err(|e| e.to_string())?;
        let b = fixed_sublattice_rank(&ctx);
        ensure(a == b, format!("character formula {a} vs fixed rank {b}"))?;
        tested += 1;
    }
    Ok(format!("200 subgroups, {} distinct orders", orders.len()))
}

fn table3() -> Outcome {
    let lat = PicardLattice::new(3).unwrap();
    let mut found = BTreeSet::new();
    for k in 0..=4 {
        for f in involution_frames(&lat, k, 1_000_000).unwrap().fingerprints {
            found.insert((f.fixed_line_count, f.fixed_tritangent_count.unwrap()));
        }
    }
    let want: BTreeSet<_> = expected().cubic_forms.iter().map(|r| (r.lines, r.tritangents)).collect();
    ensure(found == want, format!("found {found:?}"))?;
    Ok(format!("{found:?}"))
}

fn trace_pairs(degree: i64, rational_only: bool) -> BTreeSet<(i64, usize)> {
    let lat = PicardLattice::new(degree).unwrap();
    let fps = if rational_only {
        rational_fingerprints(&lat, 20_000).unwrap()
    } else {
        realdp::tables::involution_fingerprints(&lat, 20_000).unwrap()
    };
    fps.iter().map(|f| (f.trace_kperp, f.fixed_line_count)).collect()
}

fn table6() -> Outcome {
    // the table lists the R-rational forms: connected real locus
    let found = trace_pairs(2, true);
    let want: BTreeSet<_> = expected().degree_two_forms.iter().map(|r| (r.trace, r.lines)).collect();
    ensure(found == want, format!("found {found:?}"))?;
    Ok(format!("{found:?}"))
}

fn table7() -> Outcome {
    let found = trace_pairs(1, false);
    let want: BTreeSet<_> = expected().degree_one_forms.iter().map(|r| (r.trace, r.lines)).collect();
    ensure(found == want, format!("found {found:?}"))?;
    Ok(format!("{} pairs including (0,8), (0,24), (-8,0)", found.len()))
}

fn degree_four() -> Outcome {
    let sv = |b: [u8; 5]| SignVector::of(b);
    let tau = perm_from_cycles(&[&[2, 3], &[4, 5]]);
    let alpha = [DP4Element::sign_only(sv([1, 0, 1, 1, 1])), DP4Element::sign_only(sv([1, 1, 0, 1, 1]))];
    let mut failures = Vec::new();

    let q31 = DP4RealForm::named("q31_02").unwrap();
    let found = enumerate_strongly_minimal(&q31, &default_ambient(&q31)).unwrap();
    let types: BTreeSet<&str> = found.iter().map(|r| r.iso_type.as_str()).collect();
    let stated: BTreeSet<&str> = ["Z/2", "(Z/2)^2", "(Z/2)^3", "Z/4", "(Z/2)^2⋊Z/2", "(Z/2)^3⋊Z/2"].into_iter().collect();
    if types != stated {
        failures.push(format!("q31_02 types {types:?}"));
    }
    let z4 = closure(&[DP4Element::new(sv([1, 0, 1, 1, 1]), tau)]);
    for r in &found {
        let ok = if r.iso_type == "Z/4" { r.members == z4 } else { alpha.iter().any(|a| r.members.contains(a)) };
        if !ok {
            failures.push(format!("q31_02 {} of order {} has none of the stated generators", r.iso_type, r.order));
        }
    }

    let p212 = DP4RealForm::named("p2_12").unwrap();
    if !enumerate_strongly_minimal(&p212, &default_ambient(&p212)).unwrap().is_empty() {
        failures.push("p2_12 is not empty".into());
    }

    let p231 = DP4RealForm::named("p2_31").unwrap();
    let g = |vs: [[u8; 5]; 4]| -> BTreeSet<DP4Element> { vs.iter().map(|&b| DP4Element::sign_only(sv(b))).collect() };
    let want: BTreeSet<BTreeSet<DP4Element>> = [
        g([[0, 0, 0, 0, 0], [0, 1, 1, 0, 0], [1, 0, 1, 1, 1], [1, 1, 0, 1, 1]]),
        g([[0, 0, 0, 0, 0], [1, 1, 0, 0, 0], [0, 1, 1, 1, 1], [1, 0, 1, 1, 1]]),
        g([[0, 0, 0, 0, 0], [1, 0, 1, 0, 0], [0, 1, 1, 1, 1], [1, 1, 0, 1, 1]]),
    ]
    .into_iter()
    .collect();
    let order4: BTreeSet<BTreeSet<DP4Element>> = enumerate_strongly_minimal(&p231, &default_ambient(&p231))
        .unwrap()
        .into_iter()
        .filter(|r| r.order == 4)
        .map(|r| r.members)
        .collect();
    if order4 != want {
        failures.push(format!("p2_31 has {} order 4 groups", order4.len()));
    }

    // g* and σ* as printed, on the geometric basis
    let q = |m: Matrix<i64>| m.map(|&x| Rational::from_integer(x.into()));
    let gm = q(q31_geometric_g());
    let sm = q(q31_geometric_sigma());
    let id = Matrix::<Rational>::identity(6);
    let stacked: Vec<Vec<Rational>> = gm.sub(&id).rows_vec().into_iter().chain(sm.sub(&id).rows_vec()).collect();
    let rank = Matrix::from_rows(stacked).kernel().len();
    let mut h = id.clone();
    let mut trace_sum = Rational::from_integer(0.into());
    for _ in 0..4 {
        trace_sum = trace_sum + h.trace() + sm.mul(&h).trace();
        h = gm.mul(&h);
    }
    if rank != 1 || trace_sum != Rational::from_integer(8.into()) || h != id {
        failures.push(format!("printed matrices give rank {rank}"));
    }
    if failures.is_empty() {
        Ok("q31_02 types and generators, p2_12 empty, G_o^1..3, printed matrices rank 1".into())
    } else {
        Err(failures.join("; "))
    }
}

fn shortcuts() -> Outcome {
    let p231 = DP4RealForm::named("p2_31").unwrap();
    let q22 = DP4RealForm::named("q22_02").unwrap();
    let q31 = DP4RealForm::named("q31_02").unwrap();
    let mut counted = [0usize; 3];
    for h in subgroups_of_a() {
        let els = sign_group(&h.iter().copied().collect::<Vec<_>>());
        ensure(
            delta_criterion(&h, &q22).unwrap() == (dp4_invariant_rank(&els, &q22).unwrap() == 1),
            format!("q22_02 disagrees on {h:?}"),
        )?;
        counted[0] += 1;
        // the lattice action needs the group to commute with σ
        if els.iter().all(|e| p231.commutes(e)) {
            ensure(
                delta_criterion(&h, &p231).unwrap() == (dp4_invariant_rank(&els, &p231).unwrap() == 1),
                format!("p2_31 disagrees on {h:?}"),
            )?;
            counted[1] += 1;
        }
        if els.iter().all(|e| q31.commutes(e)) && star_condition(&h) {
            ensure(dp4_invariant_rank(&els, &q31).unwrap() > 1, format!("star condition holds on minimal {h:?}"))?;
            counted[2] += 1;
        }
    }
    Ok(format!("delta on {} (q22_02) and {} (p2_31) subgroups, star on {}", counted[0], counted[1], counted[2]))
}

fn explicit_lines() -> Outcome {
    let lat3 = PicardLattice::new(3).unwrap();
    let target = line_incidence(&lat3);
    let fermat = fermat_lines();
    let clebsch = clebsch_lines();
    for (name, lines) in [("fermat", &fermat), ("clebsch", &clebsch)] {
        ensure(find_isomorphism(&incidence_matrix(lines), &target).is_some(), format!("{name} incidence"))?;
    }
    let dp2 = dp2_example_lines();
    let lat2 = PicardLattice::new(2).unwrap();
    ensure(find_isomorphism(&dp2_incidence(&dp2), &line_incidence(&lat2)).is_some(), "degree 2 incidence")?;

    let twist = |n, t| TwistedRealStructure::named(t, n).unwrap();
    let count = |l: &[ProjSpaceLine], n, t| count_real_lines(l, &twist(n, t)).unwrap();
    let c = [count(&clebsch, 5, "id"), count(&clebsch, 5, "t12"), count(&clebsch, 5, "t1234")];
    let table5: Vec<usize> = expected().clebsch_twists.iter().map(|r| r.lines).collect();
    ensure(c.to_vec() == table5, format!("clebsch real lines {c:?}"))?;
    let f = [count(&fermat, 4, "id"), count(&fermat, 4, "t12"), count(&fermat, 4, "t1234")];
    ensure(f == [3, 3, 15], format!("fermat real lines {f:?}"))?;
    let tri = |l: &[ProjSpaceLine], n, t| count_real_tritangents(l, &twist(n, t)).unwrap();
    let ft = [tri(&fermat, 4, "id"), tri(&fermat, 4, "t12")];
    ensure(ft == [7, 7], format!("fermat tritangents {ft:?}"))?;
    ensure(tri(&clebsch, 5, "t12") == 13, "clebsch (12) tritangents")?;
    Ok(format!("incidence 27/27/56 isomorphic, Clebsch {c:?}, Fermat {f:?}, tritangents 7 and 13"))
}

fn invariant_families() -> Outcome {
    let mut failures = Vec::new();
    let fams = &expected().invariant_families;
    for fam in fams {
        let g = PointGroup2D::parse(&fam.group).unwrap();
        let basis = invariant_subspace(&g, fam.degree);
        let span: Vec<BinaryForm> = fam.span.iter().map(|c| BinaryForm::from_ints(c)).collect();
        if basis.len() != span.len() || !same_span(&basis, &span) {
            failures.push(format!(
                "{} ({}): dimension {} vs family {}",
                fam.source,
                fam.family,
                basis.len(),
                span.len()
            ));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} families", fams.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn lefschetz() -> Outcome {
    let geiser = minus_on_kperp(&PicardLattice::new(2).unwrap()).unwrap();
    let bertini = minus_on_kperp(&PicardLattice::new(1).unwrap()).unwrap();
    ensure(lefschetz_euler(&geiser) == -4, format!("Geiser {}", lefschetz_euler(&geiser)))?;
    ensure(lefschetz_euler(&bertini) == -5, format!("Bertini {}", lefschetz_euler(&bertini)))?;
    let mut got = Vec::new();
    for d in 1..=9 {
        let lat = PicardLattice::new(d).unwrap();
        got.push((d, lefschetz_euler(&Isometry::identity(lat.rank()))));
    }
    let want: Vec<(i64, i64)> = (1..=9).map(|d| (d, 13 - d)).collect();
    ensure(got == want, format!("Geiser -4 and Bertini -5 hold; identity gives {got:?}, expected 13 - d"))?;
    Ok("Geiser -4, Bertini -5, identity 13 - d".into())
}

fn star() -> Outcome {
    let lat = PicardLattice::new(1).unwrap();
    let g = a2_squared_example(&lat);
    ensure(g.order() == 3 && g.trace() - 1 == 2, "element is not of type A_2^2")?;
    let r = find_star_configurations(&lat, &g).map_err(|e| e.to_string())?;
    ensure(r.fixed_classes == 12, format!("{} fixed classes", r.fixed_classes))?;
    ensure(r.configurations.len() == 4, format!("{} configurations", r.configurations.len()))?;
    for (i, a) in r.configurations.iter().enumerate() {
        ensure(a.is_valid(&lat), "invalid configuration")?;
        for b in &r.configurations[i + 1..] {
            let all = a.classes.iter().all(|h| b.classes.iter().all(|k| lat.dot(&h.0, &k.0) == 1));
            ensure(all, "pair not asynchronized")?;
        }
    }
    ensure(r.block_matrix == expected_block_matrix(), "block matrix")?;
    Ok("12 fixed classes, 4 asynchronized configurations, block matrix I4 + two 2x2 blocks".into())
}

fn to_f64(q: &Rational) -> f64 {
    q.numer().to_string().parse::<f64>().unwrap() / q.denom().to_string().parse::<f64>().unwrap()
}

fn eval(f: &BinaryForm, t: f64) -> f64 {
    let c = f.rational_coeffs().unwrap();
    let k = c.len() - 1;
    c.iter().enumerate().map(|(j, q)| to_f64(q) * t.powi((k - j) as i32)).sum()
}

/// Double root r of z³ + pz + q; the node has two real branches iff the cubic is
/// positive on both sides of r.
fn oracle_kind(p: f64, q: f64) -> FiberKind {
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

fn degree_one_heuristic() -> Outcome {
    let mut summary = Vec::new();
    for sample in &expected().degree_one_samples {
        let s = DP1Surface::from_ints(&sample.f4, &sample.f6).map_err(|e| e.to_string())?;
        let group = table8_group(&sample.row).ok_or(format!("no row {}", sample.row))?;
        ensure(table8_certify(&group, &s), format!("{} sample is not certified", sample.row))?;
        let r = euler_heuristic(&s).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::Rational && r.crunodes > r.acnodes, format!("{} euler {}", sample.row, r.euler))?;
        let disc = s.discriminant();
        for fiber in &r.fibers {
            let (p, q) = match &fiber.at {
                BasePoint::Finite(iv) => {
                    let (mut lo, mut hi) = (to_f64(&iv.lo), to_f64(&iv.hi));
                    let slo = eval(&disc, lo).signum();
                    for _ in 0..200 {
                        let mid = 0.5 * (lo + hi);
                        if eval(&disc, mid).signum() == slo {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    let t = 0.5 * (lo + hi);
                    (eval(s.f4(), t), eval(s.f6(), t))
                }
                BasePoint::Infinity => {
                    let c4 = s.f4().rational_coeffs().unwrap();
                    let c6 = s.f6().rational_coeffs().unwrap();
                    (to_f64(&c4[0]), to_f64(&c6[0]))
                }
            };
            ensure(oracle_kind(p, q) == fiber.kind, format!("{} fiber disagrees with the local model", sample.row))?;
        }
        summary.push(format!("{} {}", sample.row, r.euler));
    }
    Ok(summary.join(", "))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "exceptional class counts", limit: secs(10), run: exceptional_counts },
        Criterion { id: 2, name: "Weyl group orders", limit: secs(60), run: weyl_orders },
        Criterion { id: 3, name: "character formula oracle", limit: secs(60), run: character_formula },
        Criterion { id: 4, name: "cubic surfaces table", limit: secs(120), run: table3 },
        Criterion { id: 5, name: "degree 2 table", limit: secs(300), run: table6 },
        Criterion { id: 6, name: "degree 1 table", limit: secs(300), run: table7 },
        Criterion { id: 7, name: "degree 4 enumeration", limit: secs(30), run: degree_four },
        Criterion { id: 8, name: "delta and star shortcuts", limit: secs(10), run: shortcuts },
        Criterion { id: 9, name: "explicit lines", limit: secs(120), run: explicit_lines },
        Criterion { id: 10, name: "invariant families", limit: secs(10), run: invariant_families },
        Criterion { id: 11, name: "Lefschetz spot checks", limit: secs(1), run: lefschetz },
        Criterion { id: 12, name: "star configurations", limit: secs(120), run: star },
        Criterion { id: 13, name: "degree 1 heuristic", limit: secs(30), run: degree_one_heuristic },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > c.limit => Err(format!("{msg}; took {took:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {:>2} {} ({took:.2?}): {msg}", c.id, c.name),
            Err(msg) => {
                println!("FAIL criterion {:>2} {} ({took:.2?}): {msg}", c.id, c.name);
                failed.push(c.id);
            }
        }
    }
    println!();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: {} of {} criteria passed; failed {failed:?}", criteria.len() - failed.len(), criteria.len());
        std::process::exit(1);
    }
}
