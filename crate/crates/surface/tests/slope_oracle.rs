//! Independent check of curve enumeration and disjointness on the two
//! surfaces whose curves are classified by slopes: the once-holed torus and
//! the four-holed sphere. Distinct slopes p/q, r/s meet |ps - qr| times (up
//! to a constant), so distinct classes never have disjoint representatives.

use dcx_surface::*;

/// Signed slope coordinates read off three edge weights `(x, y, z)` in which
/// one weight is the sum of the other two.
fn slope(x: u32, y: u32, z: u32) -> (i64, i64) {
    let (x, y, z) = (x as i64, y as i64, z as i64);
    assert!(z == x + y || z == (x - y).abs(), "weights {x},{y},{z} are not a slope triple");
    let eps = if z == (x - y).abs() && z != x + y { 1 } else { -1 };
    (x, eps * y)
}

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 * b.1 - a.1 * b.0).abs()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Number of slopes, i.e. primitive (p, q) up to sign, with
/// max(|p|, |q|, |p - q|) ≤ w.
fn slope_count(w: i64) -> usize {
    let mut n = 0;
    for p in -w..=w {
        for q in -w..=w {
            if gcd(p, q) == 1 && (p - q).abs() <= w && (p > 0 || (p == 0 && q > 0)) {
                n += 1;
            }
        }
    }
    n
}

fn check(sig: SurfaceSig, coords: impl Fn(&[u32]) -> (u32, u32, u32), max_w: u32) {
    let s = Surface::new(sig).unwrap();
    for w in 1..=max_w {
        let cs = s.enumerate_curves(w);
        assert_eq!(cs.len(), slope_count(w as i64), "{sig} at W={w}");
        let slopes: Vec<(i64, i64)> = cs
            .iter()
            .map(|c| {
                let (x, y, z) = coords(c.weights());
                slope(x, y, z)
            })
            .collect();
        for i in 0..cs.len() {
            for j in 0..cs.len() {
                let oracle = det(slopes[i], slopes[j]) == 0;
                assert_eq!(s.disjoint(&cs[i], &cs[j]).unwrap(), oracle, "{} vs {}", cs[i], cs[j]);
            }
        }
    }
    let c = ComplexBundle::build(&s, BundleKind::C, max_w).unwrap();
    assert!(!c.is_empty());
    assert_eq!(c.complex().edge_count(), 0);
}

#[test]
fn once_holed_torus_matches_slopes() {
    check(SurfaceSig::new(1, 1), |w| (w[0], w[1], w[2]), 6);
}

#[test]
fn four_holed_sphere_matches_slopes() {
    // opposite edges of the tetrahedron carry equal weights; use one edge of
    // each opposite pair
    let s = Surface::new(SurfaceSig::new(0, 4)).unwrap();
    let t = s.triangulation();
    let ends = |e: usize| {
        let (tt, i) = t.edge_sides(e)[0];
        [t.corner_hole(tt, i), t.corner_hole(tt, (i + 1) % 3)]
    };
    let opposite = |e: usize| {
        (0..6)
            .find(|&f| ends(f).iter().all(|h| !ends(e).contains(h)))
            .unwrap()
    };
    for c in s.enumerate_curves(4) {
        for e in 0..6 {
            assert_eq!(c.weights()[e], c.weights()[opposite(e)]);
        }
    }
    let reps: Vec<usize> = {
        let mut r = Vec::new();
        for e in 0..6 {
            if !r.contains(&opposite(e)) {
                r.push(e);
            }
        }
        r
    };
    check(SurfaceSig::new(0, 4), move |w| (w[reps[0]], w[reps[1]], w[reps[2]]), 6);
}

#[test]
fn slope_counting_oracle_small_cases() {
    assert_eq!(slope_count(1), 3);
    assert_eq!(slope_count(2), 6);
}
