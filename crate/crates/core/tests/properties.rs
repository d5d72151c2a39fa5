//! Randomised identities over small partitions.

use proptest::prelude::*;

use sylow_branch::partition::{partitions, sub_partitions};
use sylow_branch::restriction::{lin_constituents, restrict_sylow};
use sylow_branch::symfunc::{degree, lr_coefficient, plethysm_split, young_restriction};
use sylow_branch::Partition;

fn partition(max_n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=max_n, 1..=max_n)
        .prop_map(move |mut parts| {
            let mut total = 0;
            parts.retain(|&a| {
                total += a;
                total <= max_n
            });
            parts
        })
        .prop_filter("nonempty", |parts| !parts.is_empty())
        .prop_map(Partition::from_composition)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(lambda in partition(20)) {
        let c = lambda.conjugate();
        prop_assert_eq!(c.size(), lambda.size());
        prop_assert_eq!(c.conjugate(), lambda.clone());
        prop_assert_eq!(degree(&c), degree(&lambda));
    }

    #[test]
    fn lr_is_symmetric(lambda in partition(12), m in 0usize..=12) {
        let m = m.min(lambda.size());
        let inner = sub_partitions(&lambda, m);
        let outer = partitions(lambda.size() - m);
        for mu in &inner {
            for nu in &outer {
                prop_assert_eq!(lr_coefficient(&lambda, mu, nu)?, lr_coefficient(&lambda, nu, mu)?);
            }
        }
    }

    #[test]
    fn young_restriction_keeps_degree(lambda in partition(12), cut in 0usize..=12) {
        let cut = cut.min(lambda.size());
        let sizes = [cut, lambda.size() - cut];
        let total: u64 = young_restriction(&lambda, &sizes)?
            .iter()
            .map(|(mus, m)| m * mus.iter().map(degree).product::<u64>())
            .sum();
        prop_assert_eq!(total, degree(&lambda));
    }

    #[test]
    fn plethysm_split_sums_and_conjugates(mu in partition(6), pick in any::<prop::sample::Index>()) {
        let m = mu.size();
        let lambdas = partitions(2 * m);
        let lambda = pick.get(&lambdas);
        let (a, b) = plethysm_split(lambda, &mu)?;
        prop_assert_eq!(a + b, lr_coefficient(lambda, &mu, &mu)?);
        let (ca, cb) = plethysm_split(&lambda.conjugate(), &mu.conjugate())?;
        if m % 2 == 0 {
            prop_assert_eq!((ca, cb), (a, b));
        } else {
            prop_assert_eq!((ca, cb), (b, a));
        }
    }

    #[test]
    fn restriction_keeps_degree_and_twists(lambda in partition(14), p in prop::sample::select(vec![2usize, 3, 5])) {
        let v = restrict_sylow(&lambda, p)?;
        prop_assert_eq!(v.total_degree(), degree(&lambda) as u128);
        prop_assert_eq!(restrict_sylow(&lambda.conjugate(), p)?, v.sign_twisted());
        let lin = lin_constituents(&lambda, p)?;
        prop_assert_eq!(lin, v.linear_part());
    }
}

#[test]
fn trivial_and_sign_have_one_linear_constituent() {
    for n in 1..=20 {
        for p in [2, 3, 5, 7] {
            for lambda in [Partition::row(n), Partition::column(n)] {
                let lin = lin_constituents(&lambda, p).unwrap();
                assert_eq!(lin.len(), 1, "p={p} {lambda}");
                assert_eq!(lin.values().sum::<u64>(), 1);
            }
        }
    }
}
