use std::collections::HashSet;

use quartic56::arith::{CycField, CycNum, Field, QField};
use quartic56::arith::rational::rat_int;
use quartic56::fermat::{build_neron_severi, period_data};
use quartic56::polarization::H56;
use quartic56::quartic::{
    aut_x56_group, close_projective, cubics_through_lines, data, derive_psi, entries_in_z_zeta_third,
    fermat_polynomial, lines_on_x56, normalize_matrix_pub, preserves_up_to_scalar, projective_order,
    reference_cubics, reference_gamma, reference_orbit_line, reference_psi, rho, seed_lines,
};

#[test]
fn derivation_lines_and_automorphisms() {
    let t = std::time::Instant::now();
    let sys = cubics_through_lines(&seed_lines().unwrap()).unwrap();
    assert_eq!(sys.dimension(), 4);
    let fs = reference_cubics();
    let d = derive_psi(&fs).unwrap();
    assert_eq!(d.matrix_shape, (290, 35));
    assert_eq!(d.kernel_dimension, 1);
    let psi = reference_psi();
    assert_eq!(d.psi, psi);
    let f = CycField;
    let composed = psi.substitute(&f, &fs);
    assert!(rho(&composed).is_zero());
    let _ = fermat_polynomial();
    eprintln!("derive: {:?}", t.elapsed());

    let m = build_neron_severi().unwrap();
    let x56 = lines_on_x56(&m, &fs, &psi, &H56).unwrap();
    eprintln!("lines: {:?}", t.elapsed());
    assert_eq!(x56.lines.len(), 56);
    assert_eq!(x56.shared_with_fermat(), data::F48_CAP_F56);
    assert!(x56.lines.iter().all(|l| entries_in_z_zeta_third(&l.line)));
    let geo = x56.geometric_intersections();
    for i in 0..56 {
        for j in 0..56 {
            assert_eq!(geo[i][j], m.pair(&x56.f56[i], &x56.f56[j]));
        }
    }
    for (_, eqs) in &data::ORBIT_LINES {
        let l = reference_orbit_line(eqs).unwrap();
        assert!(x56.line_index(&l).is_some());
    }

    let pd = period_data(&m).unwrap();
    let aut = aut_x56_group(&m, &pd, &x56).unwrap();
    eprintln!("aut: {:?}", t.elapsed());
    assert_eq!(aut.stabilizer.len(), data::AUT56_STABILIZER_ORDER);
    assert_eq!(aut.isometries.len(), data::AUT56_ORDER);
    assert!(aut.matrices.iter().all(|g| preserves_up_to_scalar(&psi, g).is_some()));
    let sizes: Vec<usize> = aut.orbits.iter().map(|o| o.len()).collect();
    assert_eq!(sizes, vec![8, 16, 32]);
    for (size, eqs) in &data::ORBIT_LINES {
        let i = x56.line_index(&reference_orbit_line(eqs).unwrap()).unwrap();
        assert!(aut.orbits.iter().any(|o| o.len() == *size && o.contains(&i)));
    }
    let g1 = normalize_matrix_pub(&reference_gamma(&data::GAMMA1));
    let g2 = normalize_matrix_pub(&reference_gamma(&data::GAMMA2));
    assert!(aut.matrices.contains(&g1) && aut.matrices.contains(&g2));
    assert_eq!(projective_order(&g1, 8), Some(4));
    let generated: HashSet<_> = close_projective(&[g1, g2]).into_iter().collect();
    let found: HashSet<_> = aut.matrices.iter().cloned().collect();
    assert_eq!(generated, found);

    let sum = |o: &[usize], w: i64| -> Vec<_> {
        (0..20).map(|k| o.iter().map(|&i| rat_int(w * x56.f56[i][k])).fold(rat_int(0), |a, b| a + b)).collect()
    };
    let h: Vec<_> = H56.iter().map(|&x| rat_int(8 * x)).collect();
    assert_eq!(sum(&aut.orbits[2], 1), h);
    let two8 = sum(&aut.orbits[0], 2);
    let one16 = sum(&aut.orbits[1], 1);
    let total: Vec<_> = two8.iter().zip(&one16).map(|(a, b)| QField.add(a, b)).collect();
    assert_eq!(total, h);
    let _ = CycNum::zero();
}
