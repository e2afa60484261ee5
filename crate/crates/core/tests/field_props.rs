use proptest::prelude::*;

use primsurf::arith::{divisors, euler_phi, theta};
use primsurf::FieldTable;

const ORDERS: [u64; 12] = [2, 3, 4, 7, 8, 9, 16, 25, 27, 49, 64, 121];

fn field() -> impl Strategy<Value = FieldTable> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|q| FieldTable::for_order(q).unwrap())
}

proptest! {
    #[test]
    fn field_axioms(f in field(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let q = f.q() as u32;
        let (a, b, c) = (f.from_vector(a % q), f.from_vector(b % q), f.from_vector(c % q));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(f.pow(f.pth_root(a), f.p()), a);
        prop_assert_eq!(f.pow(a, f.q()), a);
        let p = f.p();
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn vector_and_log_encodings_agree(f in field(), v in any::<u32>()) {
        let a = f.from_vector(v % f.q() as u32);
        prop_assert_eq!(f.to_vector(a), v % f.q() as u32);
        if let Some(l) = a.log() {
            prop_assert_eq!(f.from_log(l), a);
            prop_assert_eq!(f.pow(f.generator(), l), a);
        }
    }
}

#[test]
fn freeness_counts_match_density() {
    for q in ORDERS {
        let f = FieldTable::for_order(q).unwrap();
        let n = q - 1;
        assert_eq!(f.primitive_elements().count() as u64, euler_phi(n));
        for e in divisors(n) {
            let count = f.nonzero().filter(|&a| f.is_e_free(a, e).unwrap()).count() as u64;
            let t = theta(e);
            assert_eq!(count * *t.denom(), n * *t.numer(), "q = {q}, e = {e}");
        }
        for r in divisors(n) {
            let rp = f.nonzero().filter(|&a| f.is_r_primitive(a, r).unwrap()).count() as u64;
            assert_eq!(rp, euler_phi(n / r));
            for big_r in divisors(n / r) {
                let count = f.nonzero().filter(|&a| f.is_rr_free(a, big_r, r).unwrap()).count() as u64;
                let t = theta(big_r);
                assert_eq!(count * *t.denom() * r, n * *t.numer(), "q = {q}, R = {big_r}, r = {r}");
            }
            // ((q-1)/r, r)-free is r-primitive.
            for a in f.nonzero() {
                assert_eq!(f.is_rr_free(a, n / r, r).unwrap(), f.is_r_primitive(a, r).unwrap());
            }
        }
        for a in f.nonzero() {
            assert_eq!(f.is_e_free(a, n).unwrap(), f.is_primitive(a));
        }
    }
}
