use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for n < 4_759_123_141 (bases 2, 7, 61).
pub fn is_prime_u32_range(n: u64) -> bool {
    assert!(n < 4_759_123_141, "outside the deterministic range");
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 61] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniformly random prime in (2^31, 2^32).
pub fn random_prime<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 31) + 1..(1u64 << 32)) | 1;
        if is_prime_u32_range(c) {
            return c;
        }
    }
}

/// Rational reconstruction of `a mod m` with |n|, d <= sqrt(m/2).
pub fn reconstruct_u64(a: u64, m: u64) -> Option<(i64, u64)> {
    let bound = ((m / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    if n.unsigned_abs().gcd(&(d as u128)) != 1 {
        return None;
    }
    Some((n as i64, d as u64))
}

/// Rational reconstruction for an arbitrary modulus.
pub fn reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Combine x ≡ a (mod m) with x ≡ b (mod p) into a residue mod m·p.
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pm = BigInt::from(p);
    let m_mod_p = m.mod_floor(&pm);
    let inv = m_mod_p.modpow(&BigInt::from(p - 2), &pm);
    let diff = (BigInt::from(b) - a).mod_floor(&pm);
    let t = (diff * inv).mod_floor(&pm);
    a + m * t
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000u64 {
            assert_eq!(is_prime_u32_range(n), trial(n), "n = {n}");
        }
        for n in [2_147_483_659u64, 4_294_967_291, 4_294_967_279] {
            assert!(is_prime_u32_range(n));
        }
        assert!(!is_prime_u32_range(3_215_031_751));
    }

    #[test]
    fn random_primes_are_large_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let p = random_prime(&mut a);
            assert!(p > 1 << 31 && p < 1 << 32);
            assert_eq!(p, random_prime(&mut b));
        }
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let p = 4_294_967_291u64;
        for (n, d) in [(3i64, 7u64), (-5, 12), (0, 1), (1, 1), (-40000, 3)] {
            let dinv = pow_mod(d, p - 2, p);
            let a = mul_mod((n.rem_euclid(p as i64)) as u64, dinv, p);
            assert_eq!(reconstruct_u64(a, p), Some((n, d)));
            let big = reconstruct(&BigInt::from(a), &BigInt::from(p)).unwrap();
            assert_eq!(big, BigRational::new(n.into(), d.into()));
        }
    }

    #[test]
    fn crt_combines() {
        let (p, q) = (1_000_000_007u64, 998_244_353u64);
        let x = BigInt::from(123_456_789_012_345u64);
        let a = x.mod_floor(&BigInt::from(p));
        let b: u64 = (&x % q).try_into().unwrap();
        let c = crt(&a, &BigInt::from(p), b, q);
        assert_eq!(c, x);
    }
}
