//! GF(2^m) arithmetic over log/antilog tables, 2 <= m <= 16.
//!
//! Elements are `u16` in polynomial representation: bit i holds the
//! coefficient of x^i. Addition is XOR; multiplication and division go
//! through the discrete-log tables built from a primitive modulus.

use thiserror::Error;

/// A field element in polynomial representation. Only the low `m` bits are used.
pub type Symbol = u16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {modulus:#x} is not primitive of degree {m}")]
    NonPrimitiveModulus { m: u32, modulus: u32 },
    #[error("field degree {0} outside supported range 2..=16")]
    DegreeOutOfRange(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Default primitive polynomials, indexed by m - 2. Verified at construction
/// like any caller-supplied modulus, so a wrong entry cannot slip through.
const DEFAULT_MODULI: [u32; 15] = [
    0b111,     // m=2
    0b1011,    // m=3
    0b1_0011,  // m=4
    0b10_0101, // m=5
    0x43,      // m=6
    0x89,      // m=7
    0x11D,     // m=8
    0x211,     // m=9
    0x409,     // m=10
    0x805,     // m=11
    0x1053,    // m=12
    0x201B,    // m=13
    0x4443,    // m=14
    0x8003,    // m=15
    0x1100B,   // m=16
];

#[derive(Debug, Clone)]
pub struct Field {
    m: u32,
    modulus: u32,
    // exp has 2*(q-1) entries so mul can index log[a]+log[b] without reducing.
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl Field {
    /// Builds the tables by walking powers of x. The walk doubles as the
    /// primitivity check: x must have multiplicative order exactly 2^m - 1.
    pub fn new(m: u32, modulus: u32) -> Result<Self, FieldError> {
        if !(2..=16).contains(&m) {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        let bad = || FieldError::NonPrimitiveModulus { m, modulus };
        if modulus >> m != 1 {
            return Err(bad()); // degree must be exactly m
        }
        let q = 1usize << m;
        let n = q - 1;
        let mut exp = vec![0u16; 2 * n];
        let mut log = vec![0u16; q];
        let mut cur: u32 = 1;
        for (i, e) in exp[..n].iter_mut().enumerate() {
            if cur == 1 && i > 0 {
                return Err(bad()); // order of x divides i < n
            }
            *e = cur as u16;
            log[cur as usize] = i as u16;
            cur <<= 1;
            if cur & (1 << m) != 0 {
                cur ^= modulus;
            }
        }
        if cur != 1 {
            return Err(bad());
        }
        exp.copy_within(..n, n);
        Ok(Field { m, modulus, exp, log })
    }

    /// Field with the library's standard primitive polynomial for this degree.
    pub fn with_default_modulus(m: u32) -> Result<Self, FieldError> {
        if !(2..=16).contains(&m) {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        Field::new(m, DEFAULT_MODULI[(m - 2) as usize])
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Multiplicative group order 2^m - 1, which is also the full RS length.
    pub fn order(&self) -> usize {
        (1usize << self.m) - 1
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    pub fn div(&self, a: Symbol, b: Symbol) -> Result<Symbol, FieldError> {
        if b == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if a == 0 {
            return Ok(0);
        }
        let n = self.order();
        let d = (self.log[a as usize] as usize + n - self.log[b as usize] as usize) % n;
        Ok(self.exp[d])
    }

    pub fn inv(&self, a: Symbol) -> Result<Symbol, FieldError> {
        self.div(1, a)
    }

    /// alpha^e for any integer exponent, reduced mod 2^m - 1.
    pub fn alpha_pow(&self, e: i64) -> Symbol {
        let n = self.order() as i64;
        self.exp[(e.rem_euclid(n)) as usize]
    }

    /// Bits to symbol, LSB first: bits[i] is the coefficient of x^i.
    pub fn bits_to_symbol(&self, bits: &[bool]) -> Result<Symbol, FieldError> {
        if bits.len() != self.m as usize {
            return Err(FieldError::LengthMismatch {
                expected: self.m as usize,
                got: bits.len(),
            });
        }
        let mut s: Symbol = 0;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s |= 1 << i;
            }
        }
        Ok(s)
    }

    /// Inverse of [`bits_to_symbol`](Self::bits_to_symbol).
    pub fn symbol_to_bits(&self, s: Symbol) -> Vec<bool> {
        (0..self.m).map(|i| s >> i & 1 == 1).collect()
    }

    /// Evaluates a polynomial (coefficients low-degree first) at x by Horner's rule.
    pub fn poly_eval(&self, coeffs: &[Symbol], x: Symbol) -> Symbol {
        let mut acc = 0;
        for &c in coeffs.iter().rev() {
            acc = self.mul(acc, x) ^ c;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf16_product_example() {
        let f = Field::new(4, 0b10011).unwrap();
        // x * (x^3 + 1) = x^4 + x = (x + 1) + x = 1 under x^4 + x + 1
        assert_eq!(f.mul(0b0010, 0b1001), 0b0001);
    }

    #[test]
    fn rejects_non_primitive_modulus() {
        // x^4+x^3+x^2+x+1 divides x^5 - 1, so x has order 5, not 15
        assert_eq!(
            Field::new(4, 0b11111).unwrap_err(),
            FieldError::NonPrimitiveModulus { m: 4, modulus: 0b11111 }
        );
        // reducible: (x+1)^2 = x^2+1
        assert!(Field::new(2, 0b101).is_err());
    }

    #[test]
    fn rejects_out_of_range_degree() {
        assert_eq!(Field::new(1, 0b11).unwrap_err(), FieldError::DegreeOutOfRange(1));
        assert_eq!(Field::new(17, 0x3).unwrap_err(), FieldError::DegreeOutOfRange(17));
    }

    #[test]
    fn all_default_moduli_are_primitive() {
        for m in 2..=16 {
            let f = Field::with_default_modulus(m).unwrap();
            assert_eq!(f.order(), (1 << m) - 1);
        }
    }

    #[test]
    fn group_laws_gf8() {
        let f = Field::with_default_modulus(3).unwrap();
        for a in 0..8u16 {
            for b in 0..8u16 {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if b != 0 {
                    let q = f.div(a, b).unwrap();
                    assert_eq!(f.mul(q, b), a);
                }
                for c in 0..8u16 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        assert_eq!(f.div(1, 0).unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn bits_round_trip() {
        let f = Field::with_default_modulus(4).unwrap();
        for s in 0..16u16 {
            assert_eq!(f.bits_to_symbol(&f.symbol_to_bits(s)).unwrap(), s);
        }
        assert!(matches!(
            f.bits_to_symbol(&[true, false]),
            Err(FieldError::LengthMismatch { expected: 4, got: 2 })
        ));
        // LSB-first: bit 0 is the constant coefficient
        assert_eq!(f.bits_to_symbol(&[true, false, false, false]).unwrap(), 1);
        assert_eq!(f.bits_to_symbol(&[false, true, false, false]).unwrap(), 2);
    }

    #[test]
    fn alpha_pow_wraps_negative_exponents() {
        let f = Field::with_default_modulus(3).unwrap();
        assert_eq!(f.alpha_pow(0), 1);
        assert_eq!(f.alpha_pow(7), 1);
        assert_eq!(f.mul(f.alpha_pow(-1), f.alpha_pow(1)), 1);
    }
}
