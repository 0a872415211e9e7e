//! Line-oriented text documents.
//!
//! Every document starts with the same four header lines and ends with
//! `end`:
//!
//! ```text
//! pmcert v1
//! role <instance|basis|certificate|verdict>
//! field <p>
//! dims <m> <n>
//! ```
//!
//! An instance continues with `order σ_1 … σ_n` and `shift s_1 … s_m`, then
//! lists the nonzero entries of `F`. Bases (`dims m m`) and certificates list
//! their nonzero entries the same way. Entry lines read
//! `<row> <col> <deg> c_0 … c_deg`, with 0-based indices in row-major order and
//! a nonzero leading coefficient. Tokens are separated by single spaces and
//! numbers are written in canonical decimal, so serialization is a bijection
//! onto valid documents.

use std::fmt::Write as _;

use appbascert_core::{
    Certificate, Condition, ConstMatrix, FieldCtx, FieldElem, Instance, OpCounts, Order, Poly, PolyMatrix, Shift,
};

use crate::error::{Error, Result};

const MAGIC: &str = "pmcert v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Instance,
    Basis,
    Certificate,
    Verdict,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Instance => "instance",
            Role::Basis => "basis",
            Role::Certificate => "certificate",
            Role::Verdict => "verdict",
        }
    }

    fn parse(s: &str) -> Option<Role> {
        [Role::Instance, Role::Basis, Role::Certificate, Role::Verdict]
            .into_iter()
            .find(|r| r.as_str() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub role: Role,
    pub p: u64,
    pub m: usize,
    pub n: usize,
}

/// A basis matrix with the modulus it was written under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisDoc {
    pub p: u64,
    pub basis: PolyMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateDoc {
    pub p: u64,
    pub certificate: Certificate,
}

/// One certification run as recorded in a verdict file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRecord {
    pub accepted: bool,
    pub failed: Option<Condition>,
    pub delta: Option<i64>,
    pub stream: u64,
    pub sample_size: u64,
    pub draws: u64,
    pub alpha_det: FieldElem,
    pub alpha_prod: FieldElem,
    pub zeta: Option<FieldElem>,
    pub u: Vec<FieldElem>,
    pub ops: OpCounts,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictDoc {
    pub p: u64,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub accepted: bool,
    pub runs: Vec<RunRecord>,
}

// ---------------------------------------------------------------- writing

fn write_header(out: &mut String, h: &Header) {
    let _ = writeln!(out, "{MAGIC}\nrole {}\nfield {}\ndims {} {}", h.role.as_str(), h.p, h.m, h.n);
}

fn write_entries(out: &mut String, a: &PolyMatrix) {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            let _ = write!(out, "{i} {j} {}", e.len() - 1);
            for c in e.coeffs() {
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
    }
}

fn join<T: std::fmt::Display>(key: &str, items: impl IntoIterator<Item = T>) -> String {
    let mut s = String::from(key);
    for x in items {
        let _ = write!(s, " {x}");
    }
    s
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    write_header(
        &mut out,
        &Header {
            role: Role::Instance,
            p: inst.ctx().modulus(),
            m: inst.m(),
            n: inst.n(),
        },
    );
    out.push_str(&join("order", inst.order().as_slice()));
    out.push('\n');
    out.push_str(&join("shift", inst.shift().as_slice()));
    out.push('\n');
    write_entries(&mut out, inst.f());
    out.push_str("end\n");
    out
}

pub fn write_basis(doc: &BasisDoc) -> String {
    let mut out = String::new();
    write_header(
        &mut out,
        &Header {
            role: Role::Basis,
            p: doc.p,
            m: doc.basis.rows(),
            n: doc.basis.cols(),
        },
    );
    write_entries(&mut out, &doc.basis);
    out.push_str("end\n");
    out
}

pub fn write_certificate(doc: &CertificateDoc) -> String {
    let c = doc.certificate.matrix();
    let mut out = String::new();
    write_header(
        &mut out,
        &Header {
            role: Role::Certificate,
            p: doc.p,
            m: c.rows(),
            n: c.cols(),
        },
    );
    write_entries(&mut out, &PolyMatrix::from_const(c));
    out.push_str("end\n");
    out
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

fn verdict_word(accepted: bool) -> &'static str {
    if accepted {
        "accept"
    } else {
        "reject"
    }
}

pub fn write_verdict(doc: &VerdictDoc) -> String {
    let mut out = String::new();
    write_header(
        &mut out,
        &Header {
            role: Role::Verdict,
            p: doc.p,
            m: doc.m,
            n: doc.n,
        },
    );
    let _ = writeln!(out, "seed {}", doc.seed);
    let _ = writeln!(out, "result {}", verdict_word(doc.accepted));
    let _ = writeln!(out, "runs {}", doc.runs.len());
    for (i, r) in doc.runs.iter().enumerate() {
        let _ = writeln!(
            out,
            "run {i} {} failed {} delta {}",
            verdict_word(r.accepted),
            opt(r.failed.map(Condition::as_str)),
            opt(r.delta)
        );
        let _ = writeln!(
            out,
            "transcript {i} stream {} sample-size {} draws {} alpha-det {} alpha-prod {} zeta {}",
            r.stream,
            r.sample_size,
            r.draws,
            r.alpha_det,
            r.alpha_prod,
            opt(r.zeta)
        );
        out.push_str(&join(&format!("u {i}"), &r.u));
        out.push('\n');
        let _ = writeln!(out, "ops {i} {} {} {}", r.ops.add_like, r.ops.mul, r.ops.inv);
    }
    out.push_str("end\n");
    out
}

// ---------------------------------------------------------------- parsing

struct Token<'a> {
    col: usize,
    text: &'a str,
}

struct Line<'a> {
    no: usize,
    tokens: Vec<Token<'a>>,
    /// Column just past the end of the line, for "missing token" errors.
    end_col: usize,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.no,
            col,
            msg: msg.into(),
        }
    }

    fn tok(&self, i: usize, what: &str) -> Result<&Token<'a>> {
        self.tokens
            .get(i)
            .ok_or_else(|| self.err(self.end_col, format!("missing {what}")))
    }

    fn expect_len(&self, n: usize) -> Result<()> {
        if self.tokens.len() > n {
            return Err(self.err(self.tokens[n].col, "unexpected trailing token"));
        }
        if self.tokens.len() < n {
            return Err(self.err(self.end_col, "missing token"));
        }
        Ok(())
    }

    fn keyword(&self, kw: &str) -> Result<()> {
        let t = self.tok(0, kw)?;
        if t.text != kw {
            return Err(self.err(t.col, format!("expected `{kw}`, found `{}`", t.text)));
        }
        Ok(())
    }

    fn u64_at(&self, i: usize, what: &str) -> Result<u64> {
        let t = self.tok(i, what)?;
        parse_u64(t.text).ok_or_else(|| self.err(t.col, format!("expected {what}, found `{}`", t.text)))
    }

    fn usize_at(&self, i: usize, what: &str) -> Result<usize> {
        let v = self.u64_at(i, what)?;
        usize::try_from(v).map_err(|_| self.err(self.tokens[i].col, format!("{what} out of range")))
    }

    fn i64_at(&self, i: usize, what: &str) -> Result<i64> {
        let t = self.tok(i, what)?;
        let (neg, digits) = match t.text.strip_prefix('-') {
            Some(d) => (true, d),
            None => (false, t.text),
        };
        let bad = || self.err(t.col, format!("expected {what}, found `{}`", t.text));
        let mag = parse_u64(digits).ok_or_else(bad)?;
        if neg && mag == 0 {
            return Err(bad());
        }
        if neg {
            0i64.checked_sub_unsigned(mag).ok_or_else(bad)
        } else {
            i64::try_from(mag).map_err(|_| bad())
        }
    }

    fn residue_at(&self, i: usize, ctx: &FieldCtx) -> Result<FieldElem> {
        let v = self.u64_at(i, "residue")?;
        ctx.try_elem(v).ok_or(Error::NonCanonicalResidue {
            line: self.no,
            col: self.tokens[i].col,
            value: v,
            p: ctx.modulus(),
        })
    }

    fn opt_at<T>(&self, i: usize, f: impl FnOnce(&Self, usize) -> Result<T>) -> Result<Option<T>> {
        if self.tok(i, "value")?.text == "none" {
            Ok(None)
        } else {
            f(self, i).map(Some)
        }
    }
}

/// Canonical unsigned decimal: no sign, no leading zeros.
fn parse_u64(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

struct Reader<'a> {
    lines: std::iter::Enumerate<std::str::Split<'a, char>>,
    last_good: usize,
    done: bool,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            lines: text.split('\n').enumerate(),
            last_good: 0,
            done: false,
        }
    }

    fn eof(&self) -> Error {
        Error::Parse {
            line: self.last_good,
            col: 1,
            msg: "unexpected end of file after this line".into(),
        }
    }

    fn next(&mut self) -> Result<Line<'a>> {
        let Some((idx, raw)) = self.lines.next() else {
            return Err(self.eof());
        };
        let no = idx + 1;
        if raw.is_empty() {
            // the empty string after the final newline
            if self.lines.next().is_none() {
                return Err(self.eof());
            }
            return Err(Error::Parse {
                line: no,
                col: 1,
                msg: "empty line".into(),
            });
        }
        let mut tokens = Vec::new();
        let mut col = 1;
        for part in raw.split(' ') {
            if part.is_empty() {
                return Err(Error::Parse {
                    line: no,
                    col,
                    msg: "tokens must be separated by single spaces".into(),
                });
            }
            if let Some(off) = part.find(|c: char| c.is_whitespace() || c.is_control()) {
                return Err(Error::Parse {
                    line: no,
                    col: col + part[..off].chars().count(),
                    msg: "unexpected whitespace or control character".into(),
                });
            }
            tokens.push(Token { col, text: part });
            col += part.chars().count() + 1;
        }
        self.last_good = no;
        Ok(Line { no, tokens, end_col: col })
    }

    fn finish(mut self) -> Result<()> {
        self.done = true;
        match self.lines.next() {
            Some((_, "")) if self.lines.next().is_none() => Ok(()),
            None => Err(Error::Parse {
                line: self.last_good,
                col: 1,
                msg: "missing final newline".into(),
            }),
            Some((idx, _)) => Err(Error::Parse {
                line: idx + 1,
                col: 1,
                msg: "content after `end`".into(),
            }),
        }
    }
}

fn read_header(r: &mut Reader<'_>, want: Role) -> Result<(Header, FieldCtx)> {
    let l = r.next()?;
    if l.tokens.len() != 2 || l.tokens[0].text != "pmcert" || l.tokens[1].text != "v1" {
        return Err(l.err(1, format!("expected `{MAGIC}`")));
    }
    let l = r.next()?;
    l.keyword("role")?;
    l.expect_len(2)?;
    let role = Role::parse(l.tokens[1].text).ok_or_else(|| l.err(l.tokens[1].col, "unknown role"))?;
    if role != want {
        return Err(l.err(
            l.tokens[1].col,
            format!("expected a {} document, found {}", want.as_str(), role.as_str()),
        ));
    }
    let l = r.next()?;
    l.keyword("field")?;
    l.expect_len(2)?;
    let p = l.u64_at(1, "modulus")?;
    let ctx = FieldCtx::new(p).map_err(|e| l.err(l.tokens[1].col, e.to_string()))?;
    let l = r.next()?;
    l.keyword("dims")?;
    l.expect_len(3)?;
    let m = l.usize_at(1, "row count")?;
    let n = l.usize_at(2, "column count")?;
    Ok((Header { role, p, m, n }, ctx))
}

/// Entry lines up to and including `end`.
fn read_entries(r: &mut Reader<'_>, ctx: &FieldCtx, rows: usize, cols: usize, max_deg: Option<usize>) -> Result<PolyMatrix> {
    let mut entries = vec![Poly::zero(); rows * cols];
    let mut prev: Option<(usize, usize)> = None;
    loop {
        let l = r.next()?;
        if l.tokens.len() == 1 && l.tokens[0].text == "end" {
            break;
        }
        let i = l.usize_at(0, "row index")?;
        let j = l.usize_at(1, "column index")?;
        if i >= rows || j >= cols {
            return Err(l.err(l.tokens[0].col, format!("entry ({i}, {j}) outside a {rows}x{cols} matrix")));
        }
        if prev.is_some_and(|pv| pv >= (i, j)) {
            return Err(l.err(l.tokens[0].col, "entries must be listed once each, in row-major order"));
        }
        prev = Some((i, j));
        let deg = l.usize_at(2, "degree")?;
        if max_deg.is_some_and(|md| deg > md) {
            return Err(l.err(l.tokens[2].col, format!("degree {deg} exceeds {}", max_deg.unwrap_or(0))));
        }
        l.expect_len(deg.checked_add(4).ok_or_else(|| l.err(l.tokens[2].col, "degree out of range"))?)?;
        let coeffs = (0..=deg).map(|k| l.residue_at(3 + k, ctx)).collect::<Result<Vec<_>>>()?;
        if coeffs[deg].is_zero() {
            return Err(l.err(l.tokens[3 + deg].col, "leading coefficient must be nonzero"));
        }
        entries[i * cols + j] = Poly::from_coeffs(coeffs);
    }
    Ok(PolyMatrix::from_vec(rows, cols, entries)?)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut r = Reader::new(text);
    let (h, ctx) = read_header(&mut r, Role::Instance)?;
    let l = r.next()?;
    l.keyword("order")?;
    l.expect_len(h.n + 1)?;
    let sigma = (0..h.n).map(|j| l.usize_at(j + 1, "order entry")).collect::<Result<Vec<_>>>()?;
    if let Some(j) = sigma.iter().position(|&s| s == 0) {
        return Err(l.err(l.tokens[j + 1].col, "order entries must be positive"));
    }
    let order = Order::new(sigma)?;
    let l = r.next()?;
    l.keyword("shift")?;
    l.expect_len(h.m + 1)?;
    let shift = (0..h.m).map(|i| l.i64_at(i + 1, "shift entry")).collect::<Result<Vec<_>>>()?;
    let entries_start = r.last_good + 1;
    let f = read_entries(&mut r, &ctx, h.m, h.n, None)?;
    for (j, (cd, &s)) in f.column_degrees().iter().zip(order.as_slice()).enumerate() {
        if cd.value().is_some_and(|d| d >= s as i64) {
            return Err(Error::Parse {
                line: entries_start,
                col: 1,
                msg: format!("column {j} of F has degree {cd}, order is {s}"),
            });
        }
    }
    r.finish()?;
    if h.m == 0 {
        return Err(Error::DimensionMismatch("an instance needs at least one row".into()));
    }
    Ok(Instance::new(ctx, order, f, Shift::new(shift))?)
}

pub fn parse_basis(text: &str) -> Result<BasisDoc> {
    let mut r = Reader::new(text);
    let (h, ctx) = read_header(&mut r, Role::Basis)?;
    if h.m != h.n {
        return Err(Error::DimensionMismatch(format!("basis must be square, got {}x{}", h.m, h.n)));
    }
    let basis = read_entries(&mut r, &ctx, h.m, h.n, None)?;
    r.finish()?;
    Ok(BasisDoc { p: h.p, basis })
}

pub fn parse_certificate(text: &str) -> Result<CertificateDoc> {
    let mut r = Reader::new(text);
    let (h, ctx) = read_header(&mut r, Role::Certificate)?;
    let c = read_entries(&mut r, &ctx, h.m, h.n, Some(0))?;
    r.finish()?;
    let c = ConstMatrix::from_fn(h.m, h.n, |i, j| c.get(i, j).coeff(0));
    Ok(CertificateDoc {
        p: h.p,
        certificate: Certificate::new(c),
    })
}

fn parse_word(l: &Line<'_>, i: usize) -> Result<bool> {
    let t = l.tok(i, "accept or reject")?;
    match t.text {
        "accept" => Ok(true),
        "reject" => Ok(false),
        other => Err(l.err(t.col, format!("expected `accept` or `reject`, found `{other}`"))),
    }
}

fn expect_index(l: &Line<'_>, i: usize, want: usize) -> Result<()> {
    let got = l.usize_at(i, "run index")?;
    if got != want {
        return Err(l.err(l.tokens[i].col, format!("expected run index {want}, found {got}")));
    }
    Ok(())
}

fn expect_tag(l: &Line<'_>, i: usize, tag: &str) -> Result<()> {
    let t = l.tok(i, tag)?;
    if t.text != tag {
        return Err(l.err(t.col, format!("expected `{tag}`, found `{}`", t.text)));
    }
    Ok(())
}

pub fn parse_verdict(text: &str) -> Result<VerdictDoc> {
    let mut r = Reader::new(text);
    let (h, ctx) = read_header(&mut r, Role::Verdict)?;
    let l = r.next()?;
    l.keyword("seed")?;
    l.expect_len(2)?;
    let seed = l.u64_at(1, "seed")?;
    let l = r.next()?;
    l.keyword("result")?;
    l.expect_len(2)?;
    let accepted = parse_word(&l, 1)?;
    let result_line = l.no;
    let l = r.next()?;
    l.keyword("runs")?;
    l.expect_len(2)?;
    let k = l.usize_at(1, "run count")?;
    let mut runs = Vec::with_capacity(k.min(1024));
    for i in 0..k {
        let l = r.next()?;
        l.keyword("run")?;
        l.expect_len(7)?;
        expect_index(&l, 1, i)?;
        let run_ok = parse_word(&l, 2)?;
        expect_tag(&l, 3, "failed")?;
        let failed = l.opt_at(4, |l, i| {
            Condition::parse(l.tokens[i].text).ok_or_else(|| l.err(l.tokens[i].col, "unknown condition"))
        })?;
        if failed.is_some() == run_ok {
            return Err(l.err(l.tokens[4].col, "failed condition must be present exactly for rejections"));
        }
        expect_tag(&l, 5, "delta")?;
        let delta = l.opt_at(6, |l, i| l.i64_at(i, "delta"))?;

        let l = r.next()?;
        l.keyword("transcript")?;
        l.expect_len(14)?;
        expect_index(&l, 1, i)?;
        expect_tag(&l, 2, "stream")?;
        let stream = l.u64_at(3, "stream")?;
        expect_tag(&l, 4, "sample-size")?;
        let sample_size = l.u64_at(5, "sample size")?;
        expect_tag(&l, 6, "draws")?;
        let draws = l.u64_at(7, "draw count")?;
        expect_tag(&l, 8, "alpha-det")?;
        let alpha_det = l.residue_at(9, &ctx)?;
        expect_tag(&l, 10, "alpha-prod")?;
        let alpha_prod = l.residue_at(11, &ctx)?;
        expect_tag(&l, 12, "zeta")?;
        let zeta = l.opt_at(13, |l, i| l.residue_at(i, &ctx))?;

        let l = r.next()?;
        l.keyword("u")?;
        l.expect_len(h.m + 2)?;
        expect_index(&l, 1, i)?;
        let u = (0..h.m).map(|t| l.residue_at(t + 2, &ctx)).collect::<Result<Vec<_>>>()?;

        let l = r.next()?;
        l.keyword("ops")?;
        l.expect_len(5)?;
        expect_index(&l, 1, i)?;
        let ops = OpCounts {
            add_like: l.u64_at(2, "operation count")?,
            mul: l.u64_at(3, "operation count")?,
            inv: l.u64_at(4, "operation count")?,
        };
        runs.push(RunRecord {
            accepted: run_ok,
            failed,
            delta,
            stream,
            sample_size,
            draws,
            alpha_det,
            alpha_prod,
            zeta,
            u,
            ops,
        });
    }
    let l = r.next()?;
    l.keyword("end")?;
    l.expect_len(1)?;
    r.finish()?;
    if accepted != (!runs.is_empty() && runs.iter().all(|x| x.accepted)) {
        return Err(Error::Parse {
            line: result_line,
            col: 8,
            msg: "result disagrees with the recorded runs".into(),
        });
    }
    Ok(VerdictDoc {
        p: h.p,
        m: h.m,
        n: h.n,
        seed,
        accepted,
        runs,
    })
}

/// Checks that a basis and a certificate fit an instance.
pub fn check_compatible(inst: &Instance, basis: &BasisDoc, cert: &CertificateDoc) -> Result<()> {
    let p = inst.ctx().modulus();
    for (what, found) in [("basis", basis.p), ("certificate", cert.p)] {
        if found != p {
            return Err(Error::ModulusMismatch {
                expected: p,
                found,
                context: what.into(),
            });
        }
    }
    let (m, n) = (inst.m(), inst.n());
    if basis.basis.rows() != m {
        return Err(Error::DimensionMismatch(format!(
            "basis is {}x{}, instance has m = {m}",
            basis.basis.rows(),
            basis.basis.cols()
        )));
    }
    let c = cert.certificate.matrix();
    if c.rows() != m || c.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "certificate is {}x{}, instance is {m}x{n}",
            c.rows(),
            c.cols()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const INSTANCE: &str = "pmcert v1\nrole instance\nfield 7\ndims 2 1\norder 3\nshift 0 -2\n0 0 2 1 0 5\n1 0 0 3\nend\n";

    #[test]
    fn instance_round_trip() {
        let inst = parse_instance(INSTANCE).unwrap();
        assert_eq!(inst.order().as_slice(), &[3]);
        assert_eq!(inst.shift().as_slice(), &[0, -2]);
        assert_eq!(write_instance(&inst), INSTANCE);
    }

    fn parse_err(text: &str) -> (usize, usize) {
        match parse_instance(text) {
            Err(Error::Parse { line, col, .. }) => (line, col),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics() {
        assert_eq!(parse_err(&INSTANCE.replace("1 0 0 3", "1 0 0 3 4")), (8, 9));
        assert_eq!(parse_err(&INSTANCE.replace("shift 0 -2", "shift 0  -2")), (6, 9));
        assert_eq!(parse_err(&INSTANCE.replace("0 0 2 1 0 5", "0 0 2 1 5 0")), (7, 11));
        assert_eq!(parse_err(&INSTANCE.replace("order 3", "order 03")), (5, 7));
        assert_eq!(parse_err(&INSTANCE.replace("0 0 2 1 0 5", "0 0 3 1 0 5 1")), (7, 1));
        assert_eq!(parse_err(&INSTANCE.replace("shift 0 -2", "shift -0 -2")), (6, 7));
        let swapped = INSTANCE.replace("0 0 2 1 0 5\n1 0 0 3", "1 0 0 3\n0 0 2 1 0 5");
        assert_eq!(parse_err(&swapped), (8, 1));
        // truncated after the first entry
        let cut = &INSTANCE[..INSTANCE.find("1 0 0 3").unwrap()];
        assert_eq!(parse_err(cut), (7, 1));
        assert_eq!(parse_err(&INSTANCE[..INSTANCE.len() - 1]), (9, 1));
        assert_eq!(parse_err(&format!("{INSTANCE}x\n")), (10, 1));
    }

    #[test]
    fn residues_must_be_canonical() {
        let bad = INSTANCE.replace("1 0 0 3", "1 0 0 7");
        assert!(matches!(
            parse_instance(&bad),
            Err(Error::NonCanonicalResidue { line: 8, col: 7, value: 7, p: 7 })
        ));
    }

    #[test]
    fn basis_and_certificate_round_trip() {
        let k = FieldCtx::new(7).unwrap();
        let basis = BasisDoc {
            p: 7,
            basis: PolyMatrix::from_u64s(&k, &[&[&[0, 1], &[]], &[&[2], &[1, 0, 3]]]),
        };
        let text = write_basis(&basis);
        assert_eq!(parse_basis(&text).unwrap(), basis);
        let cert = CertificateDoc {
            p: 7,
            certificate: Certificate::new(ConstMatrix::from_u64s(&k, &[&[1, 0, 4], &[0, 0, 6]])),
        };
        let text = write_certificate(&cert);
        assert!(text.contains("0 2 0 4\n"));
        assert_eq!(parse_certificate(&text).unwrap(), cert);
        assert!(parse_certificate(&text.replace("0 2 0 4", "0 2 1 4 1")).is_err());
        assert!(parse_basis(&text).is_err());
    }

    #[test]
    fn verdict_round_trip() {
        let doc = VerdictDoc {
            p: 101,
            m: 2,
            n: 1,
            seed: 42,
            accepted: false,
            runs: vec![
                RunRecord {
                    accepted: true,
                    failed: None,
                    delta: Some(3),
                    stream: 1,
                    sample_size: 101,
                    draws: 4,
                    alpha_det: FieldElem::ZERO,
                    alpha_prod: FieldElem::ONE,
                    zeta: None,
                    u: vec![FieldElem::ONE, FieldElem::ZERO],
                    ops: OpCounts {
                        add_like: 10,
                        mul: 9,
                        inv: 2,
                    },
                },
                RunRecord {
                    accepted: false,
                    failed: Some(Condition::NotReduced),
                    delta: None,
                    stream: 2,
                    sample_size: 50,
                    draws: 3,
                    alpha_det: FieldElem::ONE,
                    alpha_prod: FieldElem::ONE,
                    zeta: Some(FieldElem::ZERO),
                    u: vec![FieldElem::ONE, FieldElem::ZERO],
                    ops: OpCounts::default(),
                },
            ],
        };
        let text = write_verdict(&doc);
        assert_eq!(parse_verdict(&text).unwrap(), doc);
        assert!(parse_verdict(&text.replace("result reject", "result accept")).is_err());
    }

    #[test]
    fn compatibility() {
        let inst = parse_instance(INSTANCE).unwrap();
        let basis = BasisDoc {
            p: 11,
            basis: PolyMatrix::identity(2),
        };
        let cert = CertificateDoc {
            p: 7,
            certificate: Certificate::new(ConstMatrix::zeros(2, 1)),
        };
        assert!(matches!(
            check_compatible(&inst, &basis, &cert),
            Err(Error::ModulusMismatch { found: 11, .. })
        ));
        let basis = BasisDoc {
            p: 7,
            basis: PolyMatrix::identity(3),
        };
        assert!(matches!(check_compatible(&inst, &basis, &cert), Err(Error::DimensionMismatch(_))));
    }
}
