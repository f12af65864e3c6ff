use std::collections::HashSet;

use quartic56::fermat::{
    aut_x48_generators, aut_x48_group, build_neron_severi, galois_permutation, line_permutation, pair_orbits, Perm,
};
use quartic56::polarization::{
    census_hd, find_x56_configurations, orbits_under, polarization_from_config, PolarizationStatus,
};

#[test]
fn relative_degree_six_census_and_configurations() {
    let m = build_neron_severi().unwrap();
    let gens: Vec<Perm> = aut_x48_generators().iter().map(|g| line_permutation(&m, g).unwrap()).collect();
    let t = std::time::Instant::now();
    let census = census_hd(&m, &gens, 6).unwrap();
    eprintln!("census H6: {:?}", t.elapsed());
    assert_eq!(census.vectors.len(), 48264);
    assert_eq!(census.orbits.len(), 60);
    let expect = [
        (PolarizationStatus::NotNef, 792, 5),
        (PolarizationStatus::Hyperelliptic, 792, 5),
        (PolarizationStatus::SingularImage, 46296, 48),
        (PolarizationStatus::VeryAmple, 384, 2),
    ];
    for (s, v, o) in expect {
        let c = &census.counts[&s];
        assert_eq!((c.vectors, c.orbits), (v, o), "{s}");
    }
    assert!(!census.counts.contains_key(&PolarizationStatus::HasFixedComponent));
    for o in census.orbits.iter().filter(|o| o.status == PolarizationStatus::VeryAmple) {
        assert_eq!(o.line_count, Some(56));
    }

    let ample = census.with_status(PolarizationStatus::VeryAmple);
    let mut all_gens = gens.clone();
    for k in [3, 5] {
        all_gens.push(galois_permutation(&m, k).unwrap());
    }
    let orb = orbits_under(&m, &ample, &all_gens).unwrap();
    assert!(orb.iter().all(|&o| o == 0));

    let aut = aut_x48_group(&m).unwrap();
    let po = pair_orbits(&m, &aut).unwrap();
    let configs = find_x56_configurations(&po);
    assert_eq!(configs.len(), 6144);
    let images: HashSet<Vec<i64>> =
        configs.iter().map(|c| polarization_from_config(&m, &po, c).unwrap()).collect();
    let ample: HashSet<Vec<i64>> = ample.into_iter().collect();
    assert_eq!(images, ample);
}
