#![allow(clippy::type_complexity)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use rightward::bijections::{
    callan, callan_inverse, phi, phi_inverse, subdiag, subdiag_inverse, udu_uuu, udu_uuu_inverse,
};
use rightward::enumerate::{brute_avoiders, walk_tree};
use rightward::paths::{path_is, LatticePath, PathKind, Step};
use rightward::pattern::parse_pattern;
use rightward::report::cross_check;
use rightward::series::{gf_spec, sqrt_series, GfKind, GfName, Poly, TruncatedSeries};
use rightward::succession::{rule_state_counts, ClassId};
use rightward::{avoids, PatternSet, Permutation, Stat};

fn set(text: &str) -> PatternSet {
    text.parse().unwrap()
}

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

/// Greedy Dyck path of semilength `n`: `U` when the coin says so and it is still allowed.
fn dyck_from_coins(n: usize, coins: &[bool]) -> LatticePath {
    let (mut ups, mut h) = (0usize, 0usize);
    let mut steps = Vec::with_capacity(2 * n);
    for i in 0..2 * n {
        let coin = coins.get(i).copied().unwrap_or(false);
        if ups < n && (h == 0 || coin) {
            steps.push(Step::U);
            ups += 1;
            h += 1;
        } else {
            steps.push(Step::D);
            h -= 1;
        }
    }
    LatticePath::new(steps)
}

fn motzkin_from_digits(digits: &[u8]) -> LatticePath {
    let n = digits.len();
    let mut h = 0usize;
    let mut steps = Vec::with_capacity(n);
    for (i, &d) in digits.iter().enumerate() {
        let left = n - i - 1;
        let step = match d % 3 {
            0 if h < left => Step::U,
            1 if h > 0 => Step::D,
            _ if h > left => Step::D,
            _ if h == left && h > 0 => Step::D,
            _ => Step::H,
        };
        h = match step {
            Step::U => h + 1,
            Step::D => h - 1,
            _ => h,
        };
        steps.push(step);
    }
    LatticePath::new(steps)
}

fn subdiagonal_from_coins(n: usize, coins: &[bool]) -> LatticePath {
    let target = n / 2;
    let (mut x, mut y) = (0usize, 0usize);
    let mut steps = Vec::new();
    let mut i = 0;
    while x < n || y < target {
        let coin = coins.get(i).copied().unwrap_or(false);
        i += 1;
        let can_north = y < target && 2 * (y + 1) <= x;
        if can_north && (coin || x == n) {
            steps.push(Step::N);
            y += 1;
        } else {
            steps.push(Step::E);
            x += 1;
        }
    }
    LatticePath::new(steps)
}

/// Independent reading of the barred forms `[2]-31`, `[2o]-31`, `[2e]-31`:
/// each adjacent descent needs at least one / an odd / an even number of
/// earlier entries lying strictly between its two values.
fn barred_231_by_quantifiers(p: &Permutation, mode: char) -> bool {
    let e: Vec<u32> = p.entries().collect();
    (0..e.len().saturating_sub(1)).filter(|&i| e[i] > e[i + 1]).all(|i| {
        let w = (0..i).filter(|&j| e[i + 1] < e[j] && e[j] < e[i]).count();
        match mode {
            'x' => w >= 1,
            'o' => w % 2 == 1,
            _ => w % 2 == 0,
        }
    })
}

fn int_series(coeffs: &[i64], order: usize) -> TruncatedSeries {
    TruncatedSeries::from_integers(coeffs.iter().map(|&c| BigInt::from(c)), order)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn append_then_reduce(p in permutation(10), pick in any::<u32>()) {
        let v = pick % (p.len() as u32 + 1) + 1;
        let child = p.append_child(v).unwrap();
        prop_assert_eq!(child.last(), Some(v));
        prop_assert_eq!(child.len(), p.len() + 1);
        prop_assert_eq!(child.remove_last(), p);
    }

    #[test]
    fn maxima_are_the_suffix_maximum_chain(p in permutation(12)) {
        let e: Vec<u32> = p.entries().collect();
        let mut chain = Vec::new();
        let mut best = 0;
        for i in (0..e.len()).rev() {
            if e[i] > best {
                best = e[i];
                chain.push((i + 1, e[i]));
            }
        }
        chain.reverse();
        prop_assert_eq!(p.right_to_left_maxima(), chain);
    }

    #[test]
    fn barred_avoidance_agrees_with_quantifiers(p in permutation(9)) {
        prop_assert_eq!(avoids(&p, &set("[2]-31")), barred_231_by_quantifiers(&p, 'x'));
        prop_assert_eq!(avoids(&p, &set("[2o]-31")), barred_231_by_quantifiers(&p, 'o'));
        prop_assert_eq!(avoids(&p, &set("[2e]-31")), barred_231_by_quantifiers(&p, 'e'));
    }

    #[test]
    fn pattern_render_round_trips(
        letters in (1usize..=4).prop_flat_map(|k| Just((1..=k).collect::<Vec<_>>()).prop_shuffle()),
        adjacency in prop::collection::vec(any::<bool>(), 3),
        bar in 0u8..6,
    ) {
        let k = letters.len();
        let mut adj = adjacency[..k - 1].to_vec();
        // bar 0/1: none; 2/3 left end; 4/5 right end
        let bar_at = match (bar, k) {
            (0 | 1, _) | (_, 1) => None,
            (2 | 3, _) => Some(0),
            _ => Some(k - 1),
        };
        if let Some(b) = bar_at {
            adj[if b == 0 { 0 } else { k - 2 }] = false;
        }
        let mode = ["", "o", "e"][bar as usize % 3];
        let mut text = String::new();
        for (i, l) in letters.iter().enumerate() {
            if Some(i) == bar_at {
                text.push_str(&format!("[{l}{mode}]"));
            } else {
                text.push_str(&l.to_string());
            }
            if i + 1 < k && !adj[i] {
                text.push('-');
            }
        }
        let parsed = parse_pattern(&text).unwrap();
        prop_assert_eq!(parsed.to_string(), text.clone());
        prop_assert_eq!(parse_pattern(&parsed.to_string()).unwrap(), parsed);
    }

    #[test]
    fn series_product_inverse_and_sqrt(
        a in prop::collection::vec(-9i64..=9, 1..12),
        b in prop::collection::vec(-9i64..=9, 1..12),
    ) {
        let order = 11;
        let mut a1 = vec![1];
        a1.extend(&a);
        let mut b1 = vec![1];
        b1.extend(&b);
        let sa = int_series(&a1, order);
        let sb = int_series(&b1, order);
        let back = (&(&sa * &sb) * &sb.inverse().unwrap()).truncate(order);
        prop_assert_eq!(back, sa.clone());
        let root = sqrt_series(&sa).unwrap();
        prop_assert_eq!(&root * &root, sa.clone());
        prop_assert_eq!(&(&sa + &sb) - &sb, sa);
    }

    #[test]
    fn phi_round_trips_on_dyck_paths(n in 1usize..=14, coins in prop::collection::vec(any::<bool>(), 28)) {
        let d = dyck_from_coins(n, &coins);
        prop_assert!(path_is(&d, PathKind::Dyck));
        let p = phi_inverse(&d).unwrap();
        prop_assert!(avoids(&p, &set("2-1-3")));
        prop_assert_eq!(phi(&p).unwrap(), d.clone());
        prop_assert_eq!(path_is(&d, PathKind::UduFree), avoids(&p, &set("[2]-31")));
        prop_assert_eq!(path_is(&d, PathKind::UuuFree), avoids(&p, &set("12-3")));
    }

    #[test]
    fn callan_and_udu_round_trip(digits in prop::collection::vec(any::<u8>(), 0..16)) {
        let m = motzkin_from_digits(&digits);
        prop_assert!(path_is(&m, PathKind::Motzkin));
        let d = callan_inverse(&m).unwrap();
        prop_assert!(path_is(&d, PathKind::Dyck) && path_is(&d, PathKind::UduFree));
        prop_assert_eq!(d.len(), 2 * (m.len() + 1));
        prop_assert_eq!(callan(&d).unwrap(), m);
        let w = udu_uuu(&d).unwrap();
        prop_assert!(path_is(&w, PathKind::Dyck) && path_is(&w, PathKind::UuuFree));
        prop_assert_eq!(udu_uuu_inverse(&w).unwrap(), d);
    }

    #[test]
    fn subdiag_round_trips(n in 1usize..=16, coins in prop::collection::vec(any::<bool>(), 24)) {
        let path = subdiagonal_from_coins(n, &coins);
        prop_assert!(path_is(&path, PathKind::Subdiagonal));
        let p = subdiag_inverse(&path).unwrap();
        prop_assert_eq!(p.len(), n);
        prop_assert_eq!(subdiag(&p).unwrap(), path);
    }
}

#[test]
fn dashed_and_adjacent_213_agree() {
    for n in 1..=8 {
        let a = brute_avoiders(&set("2-1-3"), n);
        let b = brute_avoiders(&set("2-13"), n);
        assert_eq!(a, b, "n={n}");
    }
}

#[test]
fn classes_are_closed_under_last_deletion() {
    for class in ClassId::ALL {
        let pats = class.patterns();
        for n in 2..=8 {
            for p in brute_avoiders(&pats, n) {
                assert!(avoids(&p.remove_last(), &pats), "{class}: {p}");
            }
        }
    }
}

#[test]
fn statistic_inequalities() {
    let checks: [(&str, fn(&Permutation) -> bool); 3] = [
        ("2-1-3,12-3", |p| p.statistic(Stat::L) >= p.statistic(Stat::R)),
        ("2-1-3,32-1", |p| p.statistic(Stat::H) <= p.statistic(Stat::R)),
        ("1-2-34,2-1-3", |p| p.statistic(Stat::R) == 1 || p.statistic(Stat::M) <= p.statistic(Stat::R)),
    ];
    for (pats, holds) in checks {
        walk_tree(&set(pats), 9, |_, level| {
            for p in level {
                assert!(holds(p), "{pats}: {p}");
            }
        })
        .unwrap();
    }
}

#[test]
fn rule_state_counts_stay_polynomial() {
    for class in ClassId::ALL {
        let arity = class.label_stats().len();
        for (i, &states) in rule_state_counts(class, 30).iter().enumerate() {
            let n = i + 1;
            let bound = if arity == 1 { n + 1 } else { (n + 1) * (n + 1) };
            assert!(states <= bound, "{class} level {n}: {states} states");
        }
    }
}

#[test]
fn registry_radicands_have_exact_square_roots() {
    for name in GfName::ALL {
        if let GfKind::Radical(form) = gf_spec(name).kind {
            let s = TruncatedSeries::from_tripoly(&form.radicand, 40);
            let r = sqrt_series(&s).unwrap();
            assert_eq!(&r * &r, s, "{name}");
        }
    }
}

#[test]
fn report_is_identical_across_worker_counts() {
    let render = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| cross_check(&ClassId::ALL, 6).unwrap().render(rightward::Format::Json))
    };
    let one = render(1);
    assert_eq!(one, render(4));
    assert_eq!(one, render(4));
}

#[test]
fn closed_form_d_is_shifted_motzkin() {
    let d = rightward::closed_form(GfName::D, 15, &Default::default()).unwrap();
    let mut m = vec![BigInt::from(1)];
    for n in 0..15usize {
        let mut next = m[n].clone();
        for k in 0..n {
            next += &m[k] * &m[n - 1 - k];
        }
        m.push(next);
    }
    for n in 1..=15 {
        assert_eq!(d.coeff(n), &Poly::constant(BigRational::from_integer(m[n - 1].clone())), "t^{n}");
    }
}
