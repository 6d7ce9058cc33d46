use parakahler::arith::{Matrix, Rational};
use parakahler::catalog::{sample_points, verify_all, Catalog, VerifyConfig};
use parakahler::parakahler::check_axioms;
use proptest::prelude::*;

#[test]
fn reports_do_not_depend_on_thread_scheduling() {
    let entries = Catalog::builtin().filter("d4*", false).unwrap();
    let cfg = VerifyConfig {
        samples: 2,
        extension: true,
        ..VerifyConfig::default()
    };
    let a = verify_all(&entries, &cfg);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = one.install(|| verify_all(&entries, &cfg));
    assert_eq!(a, b);
}

#[test]
fn every_builtin_entry_passes_the_axioms() {
    for e in Catalog::builtin().all_entries() {
        let s = &e.structure;
        let r = check_axioms(s.algebra.constants(), &s.omega, &s.j).unwrap();
        assert!(r.passed(), "{}: {:?}", e.id(), r.findings().next().map(|f| f.to_string()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Sampled points respect the domains and give a numeric para-Kähler
    /// structure for every entry.
    #[test]
    fn sampled_points_are_admissible(seed in any::<u64>()) {
        for e in Catalog::builtin().entries() {
            let s = &e.structure;
            let params = s.all_params();
            let points = sample_points(s.algebra.space(), &params, &[], seed, e.id(), 2).unwrap();
            for p in &points {
                let a = p.to_assignment();
                for q in &params {
                    prop_assert!(q.domain.contains(a.get(&q.name).unwrap()), "{} {}", e.id(), a);
                }
                let Ok(j) = s.j.eval_at(p) else { continue };
                let jj: Matrix<Rational> = j.matrix().try_mul(j.matrix()).unwrap();
                prop_assert_eq!(&jj, &Matrix::identity(4, &Rational::from_integer(1.into())));
                let (Ok(c), Ok(w)) = (s.algebra.constants().eval_at(p), s.omega.eval_at(p)) else { continue };
                prop_assert!(check_axioms(&c, &w, &j).unwrap().passed(), "{} at {}", e.id(), a);
            }
        }
    }
}
