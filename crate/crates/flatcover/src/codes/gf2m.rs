//! GF(2^m) arithmetic on polynomial representations, m = 3..16.
//!
//! Elements are m-bit words of coefficients; multiplication reduces by a
//! primitive modulus from a fixed table, so α = x generates the whole
//! multiplicative group.

use crate::error::{Error, Result};

/// Primitive polynomials for m = 3..=16 (index m-3), classic table entries.
const PRIMITIVE: [u32; 14] = [
    0b1011,              // m=3:  x^3+x+1
    0b10011,             // m=4:  x^4+x+1
    0b100101,            // m=5:  x^5+x^2+1
    0b1000011,           // m=6:  x^6+x+1
    0b10001001,          // m=7:  x^7+x^3+1
    0b100011101,         // m=8:  x^8+x^4+x^3+x^2+1
    0b1000010001,        // m=9:  x^9+x^4+1
    0b10000001001,       // m=10: x^10+x^3+1
    0b100000000101,      // m=11: x^11+x^2+1
    0b1000001010011,     // m=12: x^12+x^6+x^4+x+1
    0b10000000011011,    // m=13: x^13+x^4+x^3+x+1
    0b100010001000011,   // m=14: x^14+x^10+x^6+x+1
    0b1000000000000011,  // m=15: x^15+x+1
    0b10001000000001011, // m=16: x^16+x^12+x^3+x+1
];

#[derive(Clone, Copy, Debug)]
pub struct GF2mField {
    m: u32,
    modulus: u32,
}

impl GF2mField {
    /// Field with the built-in primitive modulus.
    pub fn new(m: u32) -> Result<GF2mField> {
        if !(3..=16).contains(&m) {
            return Err(Error::parameter(format!(
                "GF(2^m) table covers m = 3..=16, got m={m}"
            )));
        }
        GF2mField::with_modulus(m, PRIMITIVE[(m - 3) as usize])
    }

    /// Field with a caller-supplied modulus, validated to be irreducible of
    /// degree m with x primitive.
    pub fn with_modulus(m: u32, modulus: u32) -> Result<GF2mField> {
        if !(1..=16).contains(&m) || (32 - modulus.leading_zeros() - 1) != m {
            return Err(Error::Construction(format!(
                "modulus {modulus:#b} does not have degree {m}"
            )));
        }
        let field = GF2mField { m, modulus };
        if !field.is_irreducible() {
            return Err(Error::Construction(format!(
                "modulus {modulus:#b} is reducible"
            )));
        }
        if !field.alpha_is_primitive() {
            return Err(Error::Construction(format!(
                "modulus {modulus:#b} is irreducible but x is not primitive"
            )));
        }
        Ok(field)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// Carry-less multiply and reduce.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut acc: u64 = 0;
        let a = a as u64;
        for i in 0..self.m {
            if (b >> i) & 1 == 1 {
                acc ^= a << i;
            }
        }
        self.reduce(acc)
    }

    fn reduce(&self, mut acc: u64) -> u32 {
        let modulus = self.modulus as u64;
        let m = self.m;
        let mut bit = 63u32;
        while acc >> m != 0 {
            while (acc >> bit) & 1 == 0 {
                bit -= 1;
            }
            acc ^= modulus << (bit - m);
        }
        acc as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut out = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                out = self.mul(out, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        out
    }

    /// Successive powers α^0 .. α^{n-1} where n = 2^m - 1.
    pub fn alpha_powers(&self) -> Vec<u32> {
        let n = self.order() as usize;
        let mut out = Vec::with_capacity(n);
        let mut cur = 1u32;
        for _ in 0..n {
            out.push(cur);
            cur = self.mul(cur, 0b10);
        }
        out
    }

    // Rabin test: x^(2^m) == x mod f, and gcd(x^(2^(m/p)) - x, f) = 1 for
    // every prime p | m.
    fn is_irreducible(&self) -> bool {
        let m = self.m;
        if self.frobenius_iterate(m) != 0b10 {
            return false;
        }
        for p in prime_divisors(m as u64) {
            let h = self.frobenius_iterate(m / p as u32) ^ 0b10;
            if self.poly_gcd(h as u64, self.modulus as u64) != 1 {
                return false;
            }
        }
        true
    }

    // x^(2^k) mod modulus, by repeated squaring in the quotient ring.
    fn frobenius_iterate(&self, k: u32) -> u32 {
        let mut cur = 0b10u32;
        for _ in 0..k {
            cur = self.mul(cur, cur);
        }
        cur
    }

    fn poly_gcd(&self, mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            if a == 0 {
                return b;
            }
            let (da, db) = (63 - a.leading_zeros(), 63 - b.leading_zeros());
            if da < db {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            a ^= b << (da - db);
        }
        a
    }

    fn alpha_is_primitive(&self) -> bool {
        let n = self.order();
        if self.pow(0b10, n) != 1 {
            return false;
        }
        prime_divisors(n)
            .iter()
            .all(|&q| self.pow(0b10, n / q) != 1)
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
