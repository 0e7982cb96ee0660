use realdp::confgraphs::find_isomorphism;
use realdp::explicitlines::*;
use realdp::picard::{line_incidence, PicardLattice};
use realdp::weyl::{classify_named, fingerprint, Isometry};

/// Lattice isometry induced by a permutation of coordinate lines, transported along
/// the incidence isomorphism `phi` (coordinate index → lattice index).
fn transported(lat: &PicardLattice, phi: &[usize], perm: &[usize]) -> Isometry {
    let lines = lat.lines();
    let src: Vec<_> = phi.iter().map(|&j| lines[j].clone()).collect();
    let dst: Vec<_> = perm.iter().map(|&i| lines[phi[i]].clone()).collect();
    Isometry::from_images(lat, &src, &dst).unwrap()
}

#[test]
fn cubic_counts() {
    let f = fermat_lines();
    let c = clebsch_lines();
    assert_eq!(f.len(), 27);
    assert_eq!(c.len(), 27);
    for l in [&f, &c] {
        let inc = incidence_matrix(l);
        assert!(inc.iter().all(|r| r.iter().filter(|&&x| x == 1).count() == 10));
        assert_eq!(tritangent_triples(l).len(), 45);
    }
}

#[test]
fn clebsch_is_symmetric() {
    let c = clebsch_lines();
    let mut perm = [0usize, 1, 2, 3, 4];
    // all 120 permutations by Heap's algorithm
    let mut stack = [0usize; 5];
    let mut seen = 1;
    let check = |p: &[usize; 5]| {
        let apply = |x: &[realdp::CycloNum]| {
            let mut y = x.to_vec();
            for i in 0..5 {
                y[p[i]] = x[i].clone();
            }
            y
        };
        assert!(c.iter().all(|l| find_line(&c, &l.map_points(apply)).is_some()));
        // only involutions pass the cocycle check
        let rs = TwistedRealStructure::new("p", p.to_vec(), vec![realdp::CycloNum::from_int(1); 5]);
        rs.is_ok() == (0..5).all(|i| p[p[i]] == i)
    };
    assert!(check(&perm));
    let mut i = 0;
    while i < 5 {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            assert!(check(&perm));
            seen += 1;
            stack[i] += 1;
            i = 0;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    assert_eq!(seen, 120);
}

#[test]
fn real_line_counts() {
    let c = clebsch_lines();
    let f = fermat_lines();
    let count = |l: &[ProjSpaceLine], n, t| count_real_lines(l, &TwistedRealStructure::named(t, n).unwrap()).unwrap();
    assert_eq!([count(&c, 5, "id"), count(&c, 5, "t12"), count(&c, 5, "t1234")], [27, 3, 7]);
    assert_eq!([count(&f, 4, "id"), count(&f, 4, "t12"), count(&f, 4, "t1234")], [3, 3, 15]);
    let t12 = TwistedRealStructure::named("t12", 5).unwrap();
    let p = t12.line_permutation(&c).unwrap();
    let i = c.iter().position(|l| l.name == "L_312").unwrap();
    assert_eq!(p[i], i);
}

#[test]
fn real_tritangent_counts() {
    let c = clebsch_lines();
    let f = fermat_lines();
    let tri = |l: &[ProjSpaceLine], n, t| count_real_tritangents(l, &TwistedRealStructure::named(t, n).unwrap()).unwrap();
    assert_eq!(tri(&f, 4, "id"), 7);
    assert_eq!(tri(&f, 4, "t12"), 7);
    assert_eq!(tri(&c, 5, "id"), 45);
    assert_eq!(tri(&c, 5, "t12"), 13);
    assert_eq!(tri(&c, 5, "t1234"), 5);
}

#[test]
fn cubic_incidence_matches_lattice_and_twists_match_fingerprints() {
    let lat = PicardLattice::new(3).unwrap();
    let target = line_incidence(&lat);
    let cases: [(&str, [(&str, &str, usize, usize); 3]); 2] = [
        ("fermat", [("id", "A_1^3", 3, 7), ("t12", "A_1^3", 3, 7), ("t1234", "A_1", 15, 15)]),
        ("clebsch", [("id", "id", 27, 45), ("t12", "A_1^4", 3, 13), ("t1234", "A_1^2", 7, 5)]),
    ];
    for (model, twists) in cases {
        let lines = cubic_lines(model, 120).unwrap();
        let phi = find_isomorphism(&incidence_matrix(&lines), &target).expect(model);
        for (tw, class, nl, nt) in twists {
            let rs = TwistedRealStructure::named(tw, cubic_coordinates(model)).unwrap();
            let g = transported(&lat, &phi, &rs.line_permutation(&lines).unwrap());
            assert!(g.compose(&g).is_identity());
            let fp = fingerprint(&lat, &g);
            assert_eq!(fp.fixed_line_count, count_real_lines(&lines, &rs).unwrap());
            assert_eq!(fp.fixed_line_count, nl, "{model} {tw}");
            assert_eq!(fp.fixed_tritangent_count, Some(nt), "{model} {tw}");
            assert_eq!(classify_named(&lat, &g), Some(class), "{model} {tw}");
        }
    }
}

#[test]
fn dp2_example() {
    let lines = dp2_example_lines();
    assert_eq!(lines.len(), 56);
    let lat = PicardLattice::new(2).unwrap();
    let inc = dp2_incidence(&lines);
    let phi = find_isomorphism(&inc, &line_incidence(&lat)).expect("56-vertex isomorphism");

    let conj = dp2_conj_permutation(&lines).unwrap();
    let s = transported(&lat, &phi, &conj);
    let fs = fingerprint(&lat, &s);
    assert_eq!((fs.trace_kperp, fs.fixed_line_count), (1, 8));
    assert_eq!(fs.real_components, Some(1));

    for (sign, trace) in [(1, -1), (-1, 1)] {
        let report = dp2_orbit_report(&lines, sign).unwrap();
        assert!(report.disjoint_real_orbits.is_empty());
        let g = transported(&lat, &phi, &dp2_g_permutation(&lines, sign).unwrap());
        assert_eq!(g.order(), 4);
        assert_eq!(g.trace() - 1, trace);
        assert_eq!(g.compose(&s), s.compose(&g));
    }
}
