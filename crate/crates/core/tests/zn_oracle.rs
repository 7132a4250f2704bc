//! Cross-checks against plain divisor arithmetic on Z_n.
//!
//! An ideal `(d)` of Z_n is represented by the divisor `d` of `n`, with
//! `(0)` as `n`. Containment is divisibility, products are `gcd(xy, n)`,
//! sums are gcds and intersections are lcms.

use std::sync::Arc;

use mlattice::constructions::zn_ideal_lattice;
use mlattice::derived;
use mlattice::maps::{make_delta, make_phi, DeltaKind, PhiKind};
use mlattice::{Class, ElementId, Lattice};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

struct Zn {
    n: u64,
    /// carrier in library order: n, proper divisors ascending, 1
    divs: Vec<u64>,
}

impl Zn {
    fn new(n: u64) -> Self {
        let mut divs = vec![n];
        divs.extend((2..n).filter(|d| n.is_multiple_of(*d)));
        divs.push(1);
        Zn { n, divs }
    }

    fn label(&self, d: u64) -> String {
        if d == self.n {
            "(0)".into()
        } else {
            format!("({d})")
        }
    }

    /// `(x) ⊆ (y)`
    fn leq(&self, x: u64, y: u64) -> bool {
        x.is_multiple_of(y)
    }

    fn mul(&self, x: u64, y: u64) -> u64 {
        gcd(x * y, self.n)
    }

    fn pow(&self, x: u64, k: u32) -> u64 {
        (1..k).fold(x, |acc, _| self.mul(acc, x))
    }

    fn residual(&self, a: u64, b: u64) -> u64 {
        self.divs.iter().filter(|&&x| self.leq(self.mul(x, b), a)).fold(self.n, |acc, &x| gcd(acc, x))
    }

    fn radical(&self, a: u64) -> u64 {
        self.divs.iter().filter(|&&x| (1..=64).any(|k| self.leq(self.pow(x, k), a))).fold(self.n, |acc, &x| gcd(acc, x))
    }

    fn omega(&self, a: u64) -> u64 {
        self.pow(a, 64)
    }

    /// First `(x, y)` in carrier order with `xy ⊆ bound`, `xy ⊄ exclude`,
    /// `x ⊄ left`, `y ⊄ right`.
    fn violation(&self, bound: u64, exclude: Option<u64>, left: u64, right: u64) -> Option<(u64, u64)> {
        for &x in &self.divs {
            for &y in &self.divs {
                let xy = self.mul(x, y);
                if self.leq(xy, bound)
                    && exclude.is_none_or(|e| !self.leq(xy, e))
                    && !self.leq(x, left)
                    && !self.leq(y, right)
                {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// Product of the distinct primes dividing `d`.
fn squarefree_kernel(mut d: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            out *= p;
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        p += 1;
    }
    if d > 1 {
        out *= d;
    }
    out
}

fn id(l: &Lattice, z: &Zn, d: u64) -> ElementId {
    l.element(&z.label(d)).unwrap()
}

const NS: std::ops::RangeInclusive<u64> = 2..=72;

#[test]
fn carrier_order_and_lattice_operations() {
    for n in NS {
        let z = Zn::new(n);
        let l = zn_ideal_lattice(n).unwrap();
        let labels: Vec<String> = z.divs.iter().map(|&d| z.label(d)).collect();
        assert_eq!(l.labels(), labels.as_slice(), "Z{n}");
        assert_eq!(l.label(l.bottom()), "(0)");
        assert_eq!(l.label(l.top()), "(1)");
        for &x in &z.divs {
            for &y in &z.divs {
                let (a, b) = (id(&l, &z, x), id(&l, &z, y));
                assert_eq!(l.leq(a, b), z.leq(x, y), "Z{n} {x}<={y}");
                assert_eq!(l.mul(a, b), id(&l, &z, z.mul(x, y)), "Z{n} {x}*{y}");
                assert_eq!(l.join(a, b), id(&l, &z, gcd(x, y)), "Z{n} {x} join {y}");
                assert_eq!(l.meet(a, b), id(&l, &z, lcm(x, y)), "Z{n} {x} meet {y}");
                assert_eq!(derived::residual(&l, a, b), id(&l, &z, z.residual(x, y)), "Z{n} ({x}:{y})");
            }
        }
    }
}

#[test]
fn radicals_powers_and_profiles() {
    for n in NS {
        let z = Zn::new(n);
        let l = zn_ideal_lattice(n).unwrap();
        for &x in &z.divs {
            let a = id(&l, &z, x);
            let rad = z.radical(x);
            assert_eq!(rad, squarefree_kernel(x), "Z{n} closed form for ({x})");
            assert_eq!(derived::radical(&l, a), id(&l, &z, rad), "Z{n} rad({x})");
            assert_eq!(derived::omega_power(&l, a), id(&l, &z, z.omega(x)), "Z{n} omega({x})");
            for k in 1..=6 {
                assert_eq!(l.power(a, k).unwrap(), id(&l, &z, z.pow(x, k)));
            }
            assert_eq!(derived::is_idempotent(&l, a), z.mul(x, x) == x);
            assert_eq!(derived::is_nilpotent(&l, a), z.omega(x) == n);
            let zd = z.divs.iter().any(|&y| y != n && z.mul(x, y) == n);
            assert_eq!(derived::is_zero_divisor(&l, a), zd);
        }
        let maxes: Vec<String> = derived::maximal_elements(&l).iter().map(|&m| l.label(m).to_string()).collect();
        let is_prime = |d: u64| d > 1 && (2..d).all(|k| !d.is_multiple_of(k));
        let primes: Vec<String> = z.divs.iter().filter(|&&d| is_prime(d)).map(|&d| z.label(d)).collect();
        assert_eq!(maxes, primes, "Z{n} maximal ideals are the prime divisors");
    }
}

/// Every class of the classifier, recomputed from divisors with the same
/// pair order, including the reported witness.
#[test]
fn classes_and_witnesses() {
    for n in NS {
        let z = Zn::new(n);
        let l = Arc::new(zn_ideal_lattice(n).unwrap());
        let d0 = make_delta(&l, DeltaKind::Identity).unwrap();
        let d1 = make_delta(&l, DeltaKind::Radical).unwrap();
        let phis = [
            (PhiKind::None, None),
            (PhiKind::Zero, Some(0)),
            (PhiKind::Identity, Some(1)),
            (PhiKind::Power(2), Some(2)),
            (PhiKind::Power(3), Some(3)),
            (PhiKind::Power(4), Some(4)),
            (PhiKind::Omega, Some(64)),
        ];
        let to_pair = |w: Option<(u64, u64)>| w.map(|(x, y)| (id(&l, &z, x), id(&l, &z, y)));
        for &q in &z.divs[..z.divs.len() - 1] {
            let p = id(&l, &z, q);
            let rad = z.radical(q);
            let w = |c: Class| c.witness(&l, p).unwrap();
            assert_eq!(w(Class::Prime), to_pair(z.violation(q, None, q, q)), "Z{n} prime ({q})");
            assert_eq!(w(Class::Primary), to_pair(z.violation(q, None, q, rad)));
            assert_eq!(w(Class::DeltaPrimary(&d0)), to_pair(z.violation(q, None, q, q)));
            assert_eq!(w(Class::DeltaPrimary(&d1)), to_pair(z.violation(q, None, q, rad)));
            for k in 2..=4 {
                let bound = z.pow(q, k);
                assert_eq!(w(Class::PotentDeltaPrimary(&d0, k)), to_pair(z.violation(bound, None, q, q)));
                assert_eq!(w(Class::PotentDeltaPrimary(&d1, k)), to_pair(z.violation(bound, None, q, rad)));
            }
            for (kind, exp) in &phis {
                let phi = make_phi(&l, kind.clone()).unwrap();
                let exclude = exp.map(|k| if k == 0 { n } else { z.pow(q, k) });
                for (delta, right) in [(&d0, q), (&d1, rad)] {
                    let got = w(Class::PhiDeltaPrimary(delta, &phi));
                    assert_eq!(got, to_pair(z.violation(q, exclude, q, right)), "Z{n} ({q}) {kind:?}");
                }
                assert_eq!(w(Class::PhiPrime(&phi)), to_pair(z.violation(q, exclude, q, q)));
                assert_eq!(w(Class::PhiPrimary(&phi)), to_pair(z.violation(q, exclude, q, rad)));
            }
        }
    }
}

#[test]
fn worked_example_values() {
    let z24 = Zn::new(24);
    assert_eq!(z24.mul(2, 6), 12);
    assert_eq!(z24.pow(4, 2), 8);
    assert_eq!(z24.radical(4), 2);
    assert_eq!(z24.radical(24), 6);
    assert_eq!(z24.omega(2), 8);
    // φ2-prime fails at (4): (2)(6) = (12) ⊆ (4), (12) ⊄ (8), (2), (6) ⊄ (4)
    assert!(z24.leq(z24.mul(2, 6), 4) && !z24.leq(z24.mul(2, 6), 8));
    assert!(!z24.leq(2, 4) && !z24.leq(6, 4));
    let z8 = Zn::new(8);
    assert_eq!(z8.residual(4, 2), 2);
    let z30 = Zn::new(30);
    assert_eq!(z30.mul(6, 6), 6);
    assert_eq!(z30.violation(6, None, 6, 6), Some((2, 3)));
}
