use gbcat::cli::format::{self, Value};
use gbcat::cyclo::{Cyclotomic, Rational, RootOfUnity};
use gbcat::enumerate::{generate_gram_matrices, CorpusSpec};
use gbcat::lattice::{bilinear_mod1, discriminant_group, quadratic_mod2, GramMatrix};
use gbcat::moddata::{canonical_form, verlinde_fusion, ModularData};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::select;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Small integer combinations of roots of unity of order dividing 24.
fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    let term = (select(vec![1i64, 2, 3, 4, 6, 8, 12, 24]), 0i64..24, -3i64..=3, 1i64..=3);
    proptest::collection::vec(term, 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(n, a, c, d)| Cyclotomic::e(a, n).scale(&q(c, d)))
            .sum()
    })
}

fn root() -> impl Strategy<Value = RootOfUnity> {
    (-30i64..30, 1i64..=30).prop_map(|(a, b)| RootOfUnity::from_fraction(a, b))
}

fn small_corpus() -> Vec<GramMatrix> {
    generate_gram_matrices(&CorpusSpec::new(2, 3, Some(8)).unwrap())
}

fn lattice() -> impl Strategy<Value = GramMatrix> {
    select(small_corpus())
}

fn to_rationals(z: &[i64]) -> Vec<Rational> {
    z.iter().map(|&k| Rational::from_integer(BigInt::from(k))).collect()
}

fn add(v: &[Rational], w: &[Rational]) -> Vec<Rational> {
    v.iter().zip(w).map(|(a, b)| a + b).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
        prop_assert_eq!(&a + &Cyclotomic::zero(), a);
    }

    #[test]
    fn roots_multiply_by_adding_exponents(p in root(), r in root()) {
        let sum = RootOfUnity::new(p.exponent() + r.exponent());
        prop_assert_eq!(&p * &r, sum.clone());
        prop_assert_eq!(&p.to_cyclotomic() * &r.to_cyclotomic(), sum.to_cyclotomic());
        prop_assert!((&p * &p.inverse()).is_one());
    }

    #[test]
    fn conjugation_is_a_ring_involution(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        let norm = &a * &a.conjugate();
        prop_assert_eq!(norm.conjugate(), norm.clone());
        let (re, im) = norm.approx_complex();
        prop_assert!(re > -1e-9 && im.abs() < 1e-9);
    }

    #[test]
    fn nonzero_values_are_invertible(a in cyclotomic()) {
        match a.inverse() {
            Some(inv) => prop_assert!((&a * &inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn display_parses_back(a in cyclotomic()) {
        let text = a.to_string();
        let parsed: Cyclotomic = text.parse().unwrap();
        prop_assert_eq!(&parsed, &a);
        prop_assert_eq!(parsed.to_string(), text);
    }

    #[test]
    fn representative_independence(
        b in lattice(),
        i in any::<usize>(),
        j in any::<usize>(),
        z1 in proptest::collection::vec(-3i64..=3, 2),
        z2 in proptest::collection::vec(-3i64..=3, 2),
    ) {
        let group = discriminant_group(&b);
        let n = b.dim();
        let v = group.representative(i % group.order());
        let w = group.representative(j % group.order());
        let v2 = add(v, &to_rationals(&z1[..n]));
        let w2 = add(w, &to_rationals(&z2[..n]));
        prop_assert_eq!(bilinear_mod1(&b, v, w).unwrap(), bilinear_mod1(&b, &v2, &w2).unwrap());
        prop_assert_eq!(quadratic_mod2(&b, v).unwrap(), quadratic_mod2(&b, &v2).unwrap());
    }

    #[test]
    fn bilinearity_and_polarization(b in lattice(), i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let group = discriminant_group(&b);
        let r = group.order();
        let (u, v, w) = (group.representative(i % r), group.representative(j % r), group.representative(k % r));
        let frac = |x: Rational, m: i64| {
            let m = Rational::from_integer(BigInt::from(m));
            let t = &x / &m;
            &x - &(t.floor() * &m)
        };
        let lhs = bilinear_mod1(&b, &add(u, v), w).unwrap();
        let rhs = frac(bilinear_mod1(&b, u, w).unwrap() + bilinear_mod1(&b, v, w).unwrap(), 1);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(bilinear_mod1(&b, u, v).unwrap(), bilinear_mod1(&b, v, u).unwrap());
        let polar = quadratic_mod2(&b, &add(u, v)).unwrap() - quadratic_mod2(&b, u).unwrap() - quadratic_mod2(&b, v).unwrap();
        let two_b = bilinear_mod1(&b, u, v).unwrap() * Rational::from_integer(BigInt::from(2));
        prop_assert_eq!(frac(polar, 2), frac(two_b, 2));
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(b in lattice(), seed in any::<u64>()) {
        let md = ModularData::from_lattice(&b).unwrap();
        let mut rest: Vec<usize> = (1..md.rank()).collect();
        let mut state = seed;
        for i in (1..rest.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            rest.swap(i, (state >> 33) as usize % (i + 1));
        }
        let mut perm = vec![0];
        perm.extend(rest);
        let relabeled = md.relabeled(&perm).unwrap();
        prop_assert_eq!(canonical_form(&md).unwrap(), canonical_form(&relabeled).unwrap());
    }

    #[test]
    fn equivalent_lattices_give_equivalent_data(b in lattice(), t in -2i64..=2, swap in any::<bool>()) {
        // B ↦ UᵗBU for U = [[1, t], [0, 1]] (times a swap)
        let e = b.entries();
        let n = b.dim();
        let mut u = vec![vec![0i64; n]; n];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = 1;
        }
        if n == 2 {
            u[0][1] = t;
            if swap {
                u.swap(0, 1);
            }
        }
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                c[i][j] = (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).map(|(k, l)| u[k][i] * e[k][l] * u[l][j]).sum();
            }
        }
        let b2 = GramMatrix::new(c).unwrap();
        let md1 = ModularData::from_lattice(&b).unwrap();
        let md2 = ModularData::from_lattice(&b2).unwrap();
        prop_assert_eq!(canonical_form(&md1).unwrap(), canonical_form(&md2).unwrap());
    }

    #[test]
    fn fusion_is_a_group(b in lattice()) {
        let md = ModularData::from_lattice(&b).unwrap();
        let ft = verlinde_fusion(&md).unwrap();
        let r = md.rank();
        for i in 0..r {
            for j in 0..r {
                let total: u64 = (0..r).map(|k| ft.get(i, j, k)).sum();
                prop_assert_eq!(total, 1);
                prop_assert_eq!(ft.get(i, j, 0), u64::from(ft.get(j, i, 0) == 1));
            }
            prop_assert_eq!(ft.get(0, i, i), 1);
        }
    }

    #[test]
    fn documents_round_trip(b in lattice()) {
        let md = ModularData::from_lattice(&b).unwrap();
        for value in [Value::Gram(b), Value::Modular(md)] {
            let text = format::serialize(&value);
            let parsed = format::parse(&text).unwrap();
            prop_assert_eq!(format::serialize(&parsed), text);
            prop_assert_eq!(parsed, value);
        }
    }
}
