//! Brute-force oracles for the windowing primitives and the classic filters.

use impulse_core::classic::{filter_cwmf, filter_sm, filter_tsmf, ClassicConfig};
use impulse_core::window::{extract_window, median_of, weighted_median, window_stats};
use impulse_core::{Image, WindowSpec};
use proptest::prelude::*;

/// Window values by direct coordinate clamping, independent of the library.
fn oracle_window(img: &Image, row: usize, col: usize, size: usize) -> Vec<u8> {
    let r = size as i64 / 2;
    let mut out = Vec::new();
    for dr in -r..=r {
        for dc in -r..=r {
            let rr = (row as i64 + dr).max(0).min(img.height() as i64 - 1) as usize;
            let cc = (col as i64 + dc).max(0).min(img.width() as i64 - 1) as usize;
            out.push(img.pixels()[rr * img.width() + cc]);
        }
    }
    out
}

fn sorted_middle(mut v: Vec<u8>) -> u8 {
    v.sort();
    v[(v.len() - 1) / 2]
}

fn oracle_sm(img: &Image, size: usize) -> Vec<u8> {
    let mut out = Vec::new();
    for r in 0..img.height() {
        for c in 0..img.width() {
            out.push(sorted_middle(oracle_window(img, r, c, size)));
        }
    }
    out
}

fn oracle_cwm(img: &Image, size: usize, weight: usize) -> Vec<u8> {
    let mut out = Vec::new();
    let center = size * size / 2;
    for r in 0..img.height() {
        for c in 0..img.width() {
            let win = oracle_window(img, r, c, size);
            let mut multiset: Vec<u8> =
                win.iter().enumerate().filter(|&(i, _)| i != center).map(|(_, &v)| v).collect();
            for _ in 0..weight {
                multiset.push(img.get(r, c));
            }
            out.push(sorted_middle(multiset));
        }
    }
    out
}

fn oracle_tsm(img: &Image, size: usize, weight: usize, threshold: u8) -> Vec<u8> {
    let sm = oracle_sm(img, size);
    let cwm = oracle_cwm(img, size, weight);
    img.pixels()
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let d1 = (p as i32 - sm[i] as i32).abs();
            let d2 = (p as i32 - cwm[i] as i32).abs();
            let t = threshold as i32;
            if t >= d1 {
                p
            } else if d2 <= t && t < d1 {
                cwm[i]
            } else {
                sm[i]
            }
        })
        .collect()
}

fn image_strategy(min: usize, max: usize) -> impl Strategy<Value = Image> {
    (min..=max, min..=max).prop_flat_map(|(w, h)| {
        proptest::collection::vec(any::<u8>(), w * h).prop_map(move |px| Image::new(w, h, px).unwrap())
    })
}

fn window_strategy() -> impl Strategy<Value = WindowSpec> {
    prop_oneof![Just(3usize), Just(5), Just(7)].prop_map(|s| WindowSpec::new(s).unwrap())
}

#[test]
fn interior_window_is_literal_neighborhood() {
    let px: Vec<u8> = (0..64).map(|i| (i * 37 % 256) as u8).collect();
    let img = Image::new(8, 8, px).unwrap();
    let win = extract_window(&img, 4, 5, WindowSpec::THREE).unwrap();
    let mut expected = Vec::new();
    for r in 3..=5 {
        for c in 4..=6 {
            expected.push(img.get(r, c));
        }
    }
    assert_eq!(win, expected);
}

proptest! {
    #[test]
    fn windows_match_oracle(img in image_strategy(1, 12), spec in window_strategy(), seed in any::<usize>()) {
        let row = seed % img.height();
        let col = (seed / 7) % img.width();
        let win = extract_window(&img, row, col, spec).unwrap();
        prop_assert_eq!(win.len(), spec.area());
        prop_assert_eq!(&win, &oracle_window(&img, row, col, spec.size()));
        // padding never invents values
        prop_assert!(win.iter().all(|v| img.pixels().contains(v)));
    }

    #[test]
    fn median_matches_full_sort(values in proptest::collection::vec(any::<u8>(), 1..60)) {
        let m = median_of(&values).unwrap();
        prop_assert_eq!(m, sorted_middle(values.clone()));
        prop_assert!(values.contains(&m));
        let mut reversed = values.clone();
        reversed.reverse();
        prop_assert_eq!(median_of(&reversed).unwrap(), m);
    }

    #[test]
    fn twenty_five_values_take_index_twelve(values in proptest::collection::vec(any::<u8>(), 25)) {
        let mut sorted = values.clone();
        sorted.sort();
        prop_assert_eq!(median_of(&values).unwrap(), sorted[12]);
    }

    #[test]
    fn stats_match_scan(values in proptest::collection::vec(any::<u8>(), 9)) {
        let s = window_stats(&values).unwrap();
        prop_assert_eq!(s.min, *values.iter().min().unwrap());
        prop_assert_eq!(s.max, *values.iter().max().unwrap());
        prop_assert_eq!(s.median, sorted_middle(values.clone()));
        prop_assert!(s.min <= s.median && s.median <= s.max);
    }

    #[test]
    fn unit_weight_median_is_plain_median(neighbors in proptest::collection::vec(any::<u8>(), 8), center in any::<u8>()) {
        let mut full = neighbors.clone();
        full.push(center);
        prop_assert_eq!(weighted_median(&neighbors, center, 1).unwrap(), median_of(&full).unwrap());
        // a center repeated more than all neighbors together wins outright
        prop_assert_eq!(weighted_median(&neighbors, center, neighbors.len() + 1).unwrap(), center);
        prop_assert_eq!(weighted_median(&neighbors, center, neighbors.len() + 3).unwrap(), center);
    }

    #[test]
    fn sm_matches_oracle(img in image_strategy(1, 16), spec in window_strategy()) {
        let out = filter_sm(&img, spec);
        prop_assert_eq!(out.dimensions(), img.dimensions());
        prop_assert_eq!(out.pixels(), &oracle_sm(&img, spec.size())[..]);
    }

    #[test]
    fn cwm_matches_oracle(img in image_strategy(1, 16), spec in window_strategy(), half in 0usize..6) {
        let weight = 2 * half + 1;
        let cfg = ClassicConfig { window: spec, center_weight: weight, tsm_threshold: 0 };
        let out = filter_cwmf(&img, &cfg).unwrap();
        prop_assert_eq!(out.pixels(), &oracle_cwm(&img, spec.size(), weight)[..]);
    }

    #[test]
    fn cwm_unit_weight_is_sm(img in image_strategy(1, 16), spec in window_strategy()) {
        let cfg = ClassicConfig { window: spec, center_weight: 1, tsm_threshold: 0 };
        prop_assert_eq!(filter_cwmf(&img, &cfg).unwrap(), filter_sm(&img, spec));
    }

    #[test]
    fn tsm_matches_oracle(img in image_strategy(1, 16), spec in window_strategy(), half in 0usize..4, threshold in any::<u8>()) {
        let weight = 2 * half + 1;
        let cfg = ClassicConfig { window: spec, center_weight: weight, tsm_threshold: threshold };
        let out = filter_tsmf(&img, &cfg).unwrap();
        prop_assert_eq!(out.pixels(), &oracle_tsm(&img, spec.size(), weight, threshold)[..]);
        // every output is one of the three candidates
        let sm = filter_sm(&img, spec);
        let cwm = filter_cwmf(&img, &cfg).unwrap();
        for i in 0..img.len() {
            let o = out.pixels()[i];
            prop_assert!(o == img.pixels()[i] || o == sm.pixels()[i] || o == cwm.pixels()[i]);
        }
    }

    #[test]
    fn tsm_keep_set_grows_with_threshold(img in image_strategy(2, 12), lo in any::<u8>(), hi in any::<u8>()) {
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        let sm = filter_sm(&img, WindowSpec::THREE);
        // the "keep original" branch fires exactly where threshold >= d1
        let kept = |t: u8| -> Vec<bool> {
            img.pixels().iter().zip(sm.pixels()).map(|(&p, &s)| t >= p.abs_diff(s)).collect()
        };
        let (k_lo, k_hi) = (kept(lo), kept(hi));
        prop_assert!(k_lo.iter().zip(&k_hi).all(|(&a, &b)| !a || b));
        let out = filter_tsmf(&img, &ClassicConfig { tsm_threshold: lo, ..ClassicConfig::default() }).unwrap();
        for (i, &k) in k_lo.iter().enumerate() {
            if k {
                prop_assert_eq!(out.pixels()[i], img.pixels()[i]);
            }
        }
    }

    #[test]
    fn classic_filters_fix_constant_images(w in 1usize..10, h in 1usize..10, v in any::<u8>(), half in 0usize..4) {
        let flat = Image::filled(w, h, v).unwrap();
        let cfg = ClassicConfig { center_weight: 2 * half + 1, ..ClassicConfig::default() };
        prop_assert_eq!(&filter_sm(&flat, WindowSpec::THREE), &flat);
        prop_assert_eq!(&filter_cwmf(&flat, &cfg).unwrap(), &flat);
        prop_assert_eq!(&filter_tsmf(&flat, &cfg).unwrap(), &flat);
    }
}
