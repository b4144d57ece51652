use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
/// `A(1,c) = 2c`, `A(f,1) = 2`, `A(f,c) = A(f-1, A(f,c-1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AckValue {
    Exact(BigUint),
    /// Evaluation of `A(f, c)` would exceed the bit budget (or `c` is too
    /// large to iterate over).
    Overflow { f: u64, c: BigUint },
}

impl AckValue {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            AckValue::Exact(v) => Some(v),
            AckValue::Overflow { .. } => None,
        }
    }
}

/// Memoizing evaluator with a fixed bit budget.
pub struct Ackermann {
    bit_budget: u64,
    memo: HashMap<(u64, BigUint), BigUint>,
}

type Res = Result<BigUint, (u64, BigUint)>;

impl Ackermann {
    pub fn new(bit_budget: u64) -> Self {
        Ackermann { bit_budget, memo: HashMap::new() }
    }

    pub fn eval(&mut self, f: u64, c: u64) -> AckValue {
        assert!(f >= 1 && c >= 1, "A(f,c) needs f, c >= 1");
        match self.go(f, &BigUint::from(c)) {
            Ok(v) => AckValue::Exact(v),
            Err((f, c)) => AckValue::Overflow { f, c },
        }
    }

    fn fits(&self, v: &BigUint) -> bool {
        v.bits() <= self.bit_budget
    }

    fn go(&mut self, f: u64, c: &BigUint) -> Res {
        let over = || Err((f, c.clone()));
        match f {
            1 => {
                let v = c << 1u32;
                if self.fits(&v) { Ok(v) } else { over() }
            }
            2 => match c.to_u64() {
                Some(e) if e < self.bit_budget => Ok(BigUint::one() << e),
                _ => over(),
            },
            3 => {
                // tower of c twos
                let Some(n) = c.to_u64() else { return over() };
                let mut v = BigUint::from(2u32);
                for _ in 1..n {
                    match v.to_u64() {
                        Some(e) if e < self.bit_budget => v = BigUint::one() << e,
                        _ => return over(),
                    }
                }
                Ok(v)
            }
            _ => {
                if let Some(v) = self.memo.get(&(f, c.clone())) {
                    return Ok(v.clone());
                }
                let Some(n) = c.to_u64() else { return over() };
                let mut v = BigUint::from(2u32);
                for j in 2..=n {
                    v = self.go(f - 1, &v).map_err(|_| (f, BigUint::from(j)))?;
                    self.memo.insert((f, BigUint::from(j)), v.clone());
                }
                Ok(v)
            }
        }
    }
}

pub fn ackermann(f: u64, c: u64, bit_budget: u64) -> AckValue {
    Ackermann::new(bit_budget).eval(f, c)
}
