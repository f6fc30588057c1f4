use crate::Failure;
use unram::characters::CharacterValue;
use unram::root_datum::RootDatum;

fn token_error(flag: &str, input: &str, pos: usize, tok: &str, what: &str) -> Failure {
    Failure(format!("--{flag}: {what} at token {} `{tok}` of `{input}`", pos + 1))
}

/// A cocharacter given as comma separated coordinates or as a sum of
/// fundamental coweights, e.g. `w1`, `2w1+w3`.
pub fn parse_mu(rd: &RootDatum, s: &str) -> Result<Vec<i64>, String> {
    parse_mu_inner(rd, s).map_err(|Failure(m)| m)
}

pub(crate) fn parse_mu_inner(rd: &RootDatum, s: &str) -> Result<Vec<i64>, Failure> {
    let s = s.trim();
    if s.contains('w') {
        let mut out = vec![0i64; rd.rank];
        for (pos, term) in s.split('+').enumerate() {
            let t = term.trim();
            let (k, idx) = t.split_once('w').ok_or_else(|| token_error("mu", s, pos, t, "expected `<k>w<i>`"))?;
            let k = k.trim_end_matches('*');
            let k: i64 = if k.is_empty() {
                1
            } else {
                k.parse().map_err(|_| token_error("mu", s, pos, t, "bad multiplicity"))?
            };
            let i: usize = idx.parse().map_err(|_| token_error("mu", s, pos, t, "bad coweight index"))?;
            if i == 0 || i > rd.semisimple_rank() {
                return Err(token_error("mu", s, pos, t, "coweight index out of range"));
            }
            let v = rd
                .fundamental_coweight(i - 1)
                .ok_or_else(|| token_error("mu", s, pos, t, "not in the cocharacter lattice"))?;
            for (x, y) in out.iter_mut().zip(&v) {
                *x += k * y;
            }
        }
        return Ok(out);
    }
    let v: Vec<i64> = s
        .split(',')
        .enumerate()
        .map(|(pos, t)| t.trim().parse().map_err(|_| token_error("mu", s, pos, t.trim(), "expected an integer")))
        .collect::<Result<_, _>>()?;
    if v.len() != rd.rank {
        return Err(Failure(format!("--mu: expected {} coordinates, got {} in `{s}`", rd.rank, v.len())));
    }
    Ok(v)
}

pub(crate) fn parse_values(flag: &str, s: &str, n: usize) -> Result<Vec<CharacterValue>, Failure> {
    let v: Vec<CharacterValue> = s
        .split(',')
        .enumerate()
        .map(|(pos, t)| t.parse().map_err(|_| token_error(flag, s, pos, t.trim(), "expected `c*q^k`")))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(Failure(format!("--{flag}: expected {n} values, got {} in `{s}`", v.len())));
    }
    Ok(v)
}

/// `piece:mult;piece:mult`, pieces in the same syntax as `--mu`.
pub fn parse_decomposition(rd: &RootDatum, s: &str) -> Result<Vec<(Vec<i64>, i64)>, String> {
    parse_decomposition_inner(rd, s).map_err(|Failure(m)| m)
}

pub(crate) fn parse_decomposition_inner(rd: &RootDatum, s: &str) -> Result<Vec<(Vec<i64>, i64)>, Failure> {
    s.split(';')
        .enumerate()
        .map(|(pos, part)| {
            let (v, m) = part.rsplit_once(':').unwrap_or((part, "1"));
            let m: i64 = m.trim().parse().map_err(|_| token_error("decomposition", s, pos, part, "bad multiplicity"))?;
            Ok((parse_mu_inner(rd, v)?, m))
        })
        .collect()
}

pub(crate) fn parse_number<T: std::str::FromStr>(flag: &str, s: &str) -> Result<T, Failure> {
    s.trim().parse().map_err(|_| Failure(format!("--{flag}: cannot parse `{s}`")))
}
