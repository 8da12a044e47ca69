mod common;

use common::{mirrored, naive_gaussian, random_grid};
use proptest::prelude::*;
use speckle_tde::stencil::{convolve, grad_central, grad_magnitude, laplacian, make_kernel};
use speckle_tde::ImageGrid;

#[test]
fn separable_convolution_matches_naive_2d() {
    for seed in 0..20 {
        let g = random_grid(seed, 16, 16, 0.0, 255.0);
        let fast = convolve(&g, &make_kernel(1.0).unwrap());
        let slow = naive_gaussian(&g, 1.0);
        let diff = fast.max_abs_diff(&slow).unwrap();
        assert!(diff < 1e-10, "seed {seed}: {diff}");
    }
}

#[test]
fn separable_convolution_matches_naive_for_other_widths() {
    let g = random_grid(77, 11, 7, -5.0, 5.0);
    for xi in [0.4, 1.3, 2.5] {
        let diff = convolve(&g, &make_kernel(xi).unwrap())
            .max_abs_diff(&naive_gaussian(&g, xi))
            .unwrap();
        assert!(diff < 1e-10, "xi {xi}: {diff}");
    }
}

#[test]
fn laplacian_matches_loop_oracle_exactly() {
    let g = random_grid(3, 8, 8, 0.0, 1.0);
    let lap = laplacian(&g);
    for y in 0..8isize {
        for x in 0..8isize {
            let c = mirrored(&g, x, y);
            let dxx = mirrored(&g, x + 1, y) - 2.0 * c + mirrored(&g, x - 1, y);
            let dyy = mirrored(&g, x, y + 1) - 2.0 * c + mirrored(&g, x, y - 1);
            assert_eq!(lap.get(x as usize, y as usize), dxx + dyy);
        }
    }
}

#[test]
fn gradient_and_magnitude_match_scalar_oracle() {
    let g = random_grid(4, 9, 6, -10.0, 10.0);
    let (gx, gy) = grad_central(&g);
    let mag = grad_magnitude(&gx, &gy).unwrap();
    for y in 0..6isize {
        for x in 0..9isize {
            let ex = (mirrored(&g, x + 1, y) - mirrored(&g, x - 1, y)) / 2.0;
            let ey = (mirrored(&g, x, y + 1) - mirrored(&g, x, y - 1)) / 2.0;
            let (xu, yu) = (x as usize, y as usize);
            assert_eq!(gx.get(xu, yu), ex);
            assert_eq!(gy.get(xu, yu), ey);
            assert_eq!(mag.get(xu, yu), (ex * ex + ey * ey).sqrt());
        }
    }
}

#[test]
fn mirrored_input_gives_mirrored_operators() {
    let g = random_grid(5, 10, 7, 0.0, 100.0);
    let f = g.flip_horizontal();
    // Left and right neighbors swap, so sums agree up to rounding.
    assert!(laplacian(&f).max_abs_diff(&laplacian(&g).flip_horizontal()).unwrap() < 1e-12);
    let (gx, gy) = grad_central(&g);
    let (fx, fy) = grad_central(&f);
    assert_eq!(fy, gy.flip_horizontal());
    assert_eq!(fx, gx.flip_horizontal().map(|v| -v).unwrap());
    let k = make_kernel(1.0).unwrap();
    let diff = convolve(&f, &k).max_abs_diff(&convolve(&g, &k).flip_horizontal()).unwrap();
    assert!(diff < 1e-12);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let g = random_grid(6, 64, 48, 0.0, 255.0);
    let k = make_kernel(1.0).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let single = pool.install(|| (convolve(&g, &k), laplacian(&g), grad_central(&g)));
    let many = (convolve(&g, &k), laplacian(&g), grad_central(&g));
    assert_eq!(single, many);
}

proptest! {
    #[test]
    fn convolution_stays_within_input_range(
        (w, h, data) in (3usize..12, 3usize..12).prop_flat_map(|(w, h)| {
            (Just(w), Just(h), proptest::collection::vec(-300.0f64..300.0, w * h))
        }),
        xi in 0.2f64..3.0,
    ) {
        let g = ImageGrid::new(w, h, data).unwrap();
        let out = convolve(&g, &make_kernel(xi).unwrap());
        prop_assert!(out.min() >= g.min() - 1e-12);
        prop_assert!(out.max() <= g.max() + 1e-12);
    }

    #[test]
    fn constants_have_no_structure(c in -1e6f64..1e6, w in 3usize..10, h in 3usize..10, xi in 0.2f64..4.0) {
        let g = ImageGrid::filled(w, h, c).unwrap();
        let out = convolve(&g, &make_kernel(xi).unwrap());
        prop_assert!(out.max_abs_diff(&g).unwrap() <= 1e-12 * c.abs().max(1.0));
        let (gx, gy) = grad_central(&g);
        prop_assert!(gx.as_slice().iter().chain(gy.as_slice()).all(|&v| v == 0.0));
        prop_assert!(laplacian(&g).as_slice().iter().all(|&v| v == 0.0));
    }
}
