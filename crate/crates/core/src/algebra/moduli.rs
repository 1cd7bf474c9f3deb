//! Primitive moduli for GF(2^k), 1 ≤ k ≤ 32.
//!
//! Each entry is the bit pattern of a degree-k polynomial over GF(2) (bit i is
//! the coefficient of x^i, the leading bit included). Every polynomial here is
//! primitive, so `x` generates the multiplicative group. The choice is the
//! lexicographically smallest trinomial when one exists, otherwise the smallest
//! pentanomial.

pub const PRIMITIVE_MODULI: [u64; 32] = [
    0x3,
    0x7,
    0xb,
    0x13,
    0x25,
    0x43,
    0x83,
    0x187,
    0x211,
    0x409,
    0x805,
    0x1107,
    0x2027,
    0x5007,
    0x8003,
    0x1100b,
    0x20009,
    0x40081,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x1000087,
    0x2000009,
    0x4000047,
    0x8000027,
    0x10000009,
    0x20000005,
    0x40800007,
    0x80000009,
    0x100400007,
];

pub fn modulus_for(degree: u32) -> Option<u64> {
    if (1..=32).contains(&degree) {
        Some(PRIMITIVE_MODULI[degree as usize - 1])
    } else {
        None
    }
}
