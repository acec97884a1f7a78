use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Reduction data for one conductor: `powers[k]` holds `zeta_m^k` written in
/// the power basis `1, zeta, .., zeta^(phi-1)`.
#[derive(Debug)]
pub(crate) struct Tables {
    pub phi: usize,
    pub powers: Vec<Vec<i64>>,
}

pub fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m as u64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p as u64;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n as u64;
    }
    result as usize
}

pub fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree
/// first. Computed by dividing `x^m - 1` by `Phi_d` for every proper divisor.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m > 0, "conductor must be positive");
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            poly = exact_divide(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1);
    let qlen = rem.len() - dd;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd] / lead;
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn build_tables(m: u32) -> Tables {
    let phi_poly = cyclotomic_polynomial(m);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by zeta and reduce x^phi = -sum phi_i x^i
        let carry = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if carry != 0 {
            for i in 0..phi {
                cur[i] -= carry * phi_poly[i];
            }
        }
    }
    Tables { phi, powers }
}

static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Tables>>>> = OnceLock::new();

thread_local! {
    static LOCAL: std::cell::RefCell<HashMap<u32, Arc<Tables>>> = std::cell::RefCell::new(HashMap::new());
}

pub(crate) fn tables(m: u32) -> Arc<Tables> {
    if let Some(t) = LOCAL.with(|l| l.borrow().get(&m).cloned()) {
        return t;
    }
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    let found = cache.read().expect("field cache poisoned").get(&m).cloned();
    let t = match found {
        Some(t) => t,
        None => {
            let t = Arc::new(build_tables(m));
            cache
                .write()
                .expect("field cache poisoned")
                .entry(m)
                .or_insert_with(|| t.clone())
                .clone()
        }
    };
    LOCAL.with(|l| l.borrow_mut().insert(m, t.clone()));
    t
}
