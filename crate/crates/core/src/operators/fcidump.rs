//! FCIDUMP integral files.
//!
//! Two-electron integrals are in chemist notation `(ij|kl)` with the usual
//! eightfold permutational symmetry of real orbitals. The generated operator
//! uses interleaved spin orbitals: spatial orbital `o` with spin `s` is mode
//! `2o + s`.

use std::collections::BTreeMap;
use std::path::Path;

use super::{FermionOperator, LadderOp};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FcidumpData {
    pub norb: usize,
    pub nelec: usize,
    pub ms2: i64,
    pub orbsym: Vec<i64>,
    pub isym: i64,
    pub core_energy: f64,
    /// Keyed by canonical `(i, j)` with `i >= j`, zero-based.
    pub one_body: BTreeMap<(usize, usize), f64>,
    /// Keyed by canonical `((i, j), (k, l))`, zero-based.
    pub two_body: BTreeMap<((usize, usize), (usize, usize)), f64>,
    /// `value i 0 0 0` records, kept verbatim for round-tripping.
    pub orbital_energies: BTreeMap<usize, f64>,
}

fn pair(i: usize, j: usize) -> (usize, usize) {
    (i.max(j), i.min(j))
}

fn quad(i: usize, j: usize, k: usize, l: usize) -> ((usize, usize), (usize, usize)) {
    let a = pair(i, j);
    let b = pair(k, l);
    (a.max(b), a.min(b))
}

impl FcidumpData {
    pub fn new(norb: usize, nelec: usize) -> Self {
        FcidumpData {
            norb,
            nelec,
            ms2: 0,
            orbsym: vec![1; norb],
            isym: 1,
            core_energy: 0.0,
            one_body: BTreeMap::new(),
            two_body: BTreeMap::new(),
            orbital_energies: BTreeMap::new(),
        }
    }

    pub fn h1(&self, i: usize, j: usize) -> f64 {
        self.one_body.get(&pair(i, j)).copied().unwrap_or(0.0)
    }

    pub fn h2(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.two_body.get(&quad(i, j, k, l)).copied().unwrap_or(0.0)
    }

    pub fn set_h1(&mut self, i: usize, j: usize, v: f64) {
        self.one_body.insert(pair(i, j), v);
    }

    pub fn set_h2(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        self.two_body.insert(quad(i, j, k, l), v);
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let mut header = String::new();
        let mut closed = false;
        for (_, line) in lines.by_ref() {
            let upper = line.to_ascii_uppercase();
            let end = upper.find("&END").or_else(|| {
                let t = upper.trim();
                (t == "/" || t.ends_with(" /") || t.ends_with(",/")).then(|| upper.rfind('/').unwrap())
            });
            match end {
                Some(pos) => {
                    header.push_str(&upper[..pos]);
                    closed = true;
                    break;
                }
                None => {
                    header.push_str(&upper);
                    header.push(' ');
                }
            }
        }
        if !closed {
            return Err(Error::parse(1, "FCIDUMP header is not terminated by &END or /"));
        }
        let header = header
            .trim()
            .strip_prefix("&FCI")
            .ok_or_else(|| Error::parse(1, "FCIDUMP header must start with &FCI"))?;

        let mut fields: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut current: Option<String> = None;
        for tok in header.split([',', ' ', '\t']).filter(|t| !t.is_empty()) {
            if let Some((k, v)) = tok.split_once('=') {
                let k = k.trim().to_string();
                let entry = fields.entry(k.clone()).or_default();
                if !v.trim().is_empty() {
                    entry.push(v.trim().to_string());
                }
                current = Some(k);
            } else if let Some(k) = &current {
                fields.get_mut(k).expect("current key inserted").push(tok.to_string());
            } else {
                return Err(Error::parse(1, format!("unexpected header token {tok:?}")));
            }
        }
        let scalar = |key: &str| -> Result<Option<i64>> {
            match fields.get(key).and_then(|v| v.first()) {
                None => Ok(None),
                Some(s) => s
                    .parse::<i64>()
                    .map(Some)
                    .map_err(|_| Error::parse(1, format!("bad {key} value {s:?}"))),
            }
        };
        let norb = scalar("NORB")?.ok_or_else(|| Error::parse(1, "missing NORB"))?;
        if norb < 0 {
            return Err(Error::parse(1, "negative NORB"));
        }
        let norb = norb as usize;
        let mut data = FcidumpData::new(norb, scalar("NELEC")?.unwrap_or(0).max(0) as usize);
        data.ms2 = scalar("MS2")?.unwrap_or(0);
        data.isym = scalar("ISYM")?.unwrap_or(1);
        if let Some(sym) = fields.get("ORBSYM") {
            data.orbsym = sym
                .iter()
                .map(|s| s.parse::<i64>().map_err(|_| Error::parse(1, format!("bad ORBSYM entry {s:?}"))))
                .collect::<Result<_>>()?;
        }

        for (idx, raw) in lines {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 5 {
                return Err(Error::parse(line_no, format!("expected `value i j k l`, got {line:?}")));
            }
            let value: f64 = toks[0]
                .replace(['D', 'd'], "E")
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad integral value {:?}", toks[0])))?;
            let mut ix = [0usize; 4];
            for (slot, t) in ix.iter_mut().zip(&toks[1..]) {
                *slot = t
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad index {t:?}")))?;
                if *slot > norb {
                    return Err(Error::Data(format!(
                        "line {line_no}: orbital index {slot} exceeds NORB = {norb}"
                    )));
                }
            }
            match ix {
                [0, 0, 0, 0] => data.core_energy = value,
                [i, 0, 0, 0] => {
                    data.orbital_energies.insert(i - 1, value);
                }
                [i, j, 0, 0] if i > 0 && j > 0 => data.set_h1(i - 1, j - 1, value),
                [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                    data.set_h2(i - 1, j - 1, k - 1, l - 1, value)
                }
                _ => {
                    return Err(Error::parse(line_no, format!("unsupported index pattern {ix:?}")));
                }
            }
        }
        Ok(data)
    }

    /// Serializes with shortest round-trip floats, so `parse(write(d)) == d`.
    pub fn write(&self) -> String {
        let orbsym: Vec<String> = self.orbsym.iter().map(|s| s.to_string()).collect();
        let mut s = format!(
            "&FCI NORB={},NELEC={},MS2={},\n ORBSYM={},\n ISYM={},\n&END\n",
            self.norb,
            self.nelec,
            self.ms2,
            orbsym.join(","),
            self.isym
        );
        for (((i, j), (k, l)), v) in &self.two_body {
            s.push_str(&format!("{:e} {} {} {} {}\n", v, i + 1, j + 1, k + 1, l + 1));
        }
        for ((i, j), v) in &self.one_body {
            s.push_str(&format!("{:e} {} {} 0 0\n", v, i + 1, j + 1));
        }
        for (i, v) in &self.orbital_energies {
            s.push_str(&format!("{:e} {} 0 0 0\n", v, i + 1));
        }
        s.push_str(&format!("{:e} 0 0 0 0\n", self.core_energy));
        s
    }

    /// `sum t_pq a_p^dagger a_q + 1/2 sum t_pqrs a_p^dagger a_q^dagger a_r a_s + E_core`
    /// over spin orbitals, with `t_pqrs = (ps|qr)` for matching spins.
    pub fn to_fermion_operator(&self) -> Result<FermionOperator> {
        let n = self.norb;
        let mut f = FermionOperator::new(2 * n);
        f.constant = self.core_energy;
        let so = |o: usize, s: usize| 2 * o + s;
        for i in 0..n {
            for j in 0..n {
                let h = self.h1(i, j);
                if h == 0.0 {
                    continue;
                }
                for s in 0..2 {
                    f.add_term(h, vec![LadderOp::create(so(i, s)), LadderOp::annihilate(so(j, s))])?;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.h2(i, j, k, l);
                        if v == 0.0 {
                            continue;
                        }
                        for s in 0..2 {
                            for t in 0..2 {
                                let (p, q, r, ss) = (so(i, s), so(k, t), so(l, t), so(j, s));
                                if p == q || r == ss {
                                    continue;
                                }
                                f.add_term(
                                    0.5 * v,
                                    vec![
                                        LadderOp::create(p),
                                        LadderOp::create(q),
                                        LadderOp::annihilate(r),
                                        LadderOp::annihilate(ss),
                                    ],
                                )?;
                            }
                        }
                    }
                }
            }
        }
        Ok(f)
    }
}

/// Reads an FCIDUMP file into its spin-orbital Hamiltonian.
pub fn load_fcidump(path: impl AsRef<Path>) -> Result<FermionOperator> {
    let text = std::fs::read_to_string(path)?;
    FcidumpData::parse(&text)?.to_fermion_operator()
}
