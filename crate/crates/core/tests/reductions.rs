use std::collections::HashSet;

use quartic56::arith::residue::split_prime;
use quartic56::fermat::build_neron_severi;
use quartic56::groebner::reduction::{
    audit_primes, char3_line_reduction, dual_line_candidates, primes_over_three, reduction_lines_audit,
    reduction_smoothness, smoothness_orderings, vanishes_on_line, ReductionStatus, SAMPLE_PRIMES,
};
use quartic56::arith::CycField;
use quartic56::groebner::reduction::{dehomogenize, hermitian_quartic, jacobian_generators, reduce_poly};
use quartic56::groebner::{buchberger_tracked, contains_unit};
use quartic56::poly::MonomialOrdering;
use quartic56::polarization::H56;
use quartic56::quartic::{lines_on_x56, reference_cubics, reference_psi};

#[test]
fn reductions_of_the_56_line_quartic() {
    let t = std::time::Instant::now();
    let model = build_neron_severi().unwrap();
    let psi = reference_psi();
    let x56 = lines_on_x56(&model, &reference_cubics(), &psi, &H56).unwrap();

    let cert = reduction_smoothness(&psi, &smoothness_orderings()).unwrap();
    eprintln!("smoothness: {:?} S = {:?}", t.elapsed(), cert.bad_prime_bound);
    assert!(cert.generic_smooth);
    assert!(cert.bad_prime_bound.contains(&2) && cert.bad_prime_bound.contains(&3));
    let (p3, p3b) = primes_over_three().unwrap();
    let p2 = split_prime(2).unwrap().remove(0);
    let singular: HashSet<String> = cert.singular_primes().iter().map(|c| c.prime.clone()).collect();
    let want: HashSet<String> = [p2.label(), p3b.label()].into_iter().collect();
    assert_eq!(singular, want);

    let dual = dual_line_candidates(&model, &x56).unwrap();
    eprintln!("dual: {:?}", t.elapsed());
    assert_eq!(dual.vectors.len(), 56);
    assert!(dual.neighbors.iter().all(|nb| nb.len() >= 4));

    let reports = audit_primes(&x56, &dual, &SAMPLE_PRIMES).unwrap();
    eprintln!("audits: {:?}", t.elapsed());
    for r in &reports {
        let a = r.lines.as_ref().unwrap();
        assert_eq!(r.status, ReductionStatus::LinesOk, "{}", r.prime);
        assert!(a.is_clean(), "{}: {:?}", r.prime, a);
    }

    // At P₃ every Λ(r′) has a unique common line, giving 112 lines.
    let f9 = p3.residue_field();
    assert_eq!(reduce_poly(&psi, &p3).unwrap(), hermitian_quartic(&f9, psi.order()));
    let audit = reduction_lines_audit(&x56, &dual, &p3).unwrap();
    assert!(audit.reduced_lines_distinct && audit.reduced_lines_on_surface && audit.intersections_preserved);
    assert!(audit.common_line_counts.iter().all(|c| *c == Some(1)));
    assert_eq!(audit.line_count, 112);
    let herm = hermitian_quartic(&f9, psi.order());
    for l in &x56.lines {
        assert!(vanishes_on_line(&f9, &herm, &char3_line_reduction(&l.line).unwrap()));
    }
    eprintln!("total: {:?}", t.elapsed());
}

#[test]
fn jacobian_ideal_is_the_unit_ideal_on_every_affine_chart() {
    let f = CycField;
    let gens = jacobian_generators(&f, &reference_psi());
    for i in 0..4 {
        let chart: Vec<_> = gens.iter().map(|g| dehomogenize(&f, g, i)).collect();
        let gb = buchberger_tracked(&chart, MonomialOrdering::degrevlex(4)).unwrap();
        assert!(contains_unit(&gb.basis), "chart {i}");
    }
}
