//! On-disk schemas: UTF-8 JSON, complex numbers as `[re, im]` pairs
//! (lowest degree first for polynomials, row-major nested arrays for
//! matrices), and a top-level `format_version`. Floats are emitted with 17
//! significant digits, so values round-trip losslessly and identical runs
//! produce byte-identical files.

use crate::config::DEGREE_CAP;
use crate::engine::{CertEntry, Certificate, SolveReport, StageStats};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::moves::{Move, MoveKind, Program};
use crate::poly::Poly;
use crate::space::{CMPoint, ConfigBlock, Configuration};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io;
use std::path::Path;

pub const FORMAT_VERSION: &str = "1";

#[derive(Serialize, Deserialize)]
pub struct InstanceFile {
    pub format_version: String,
    pub configuration: ConfigurationRepr,
}

#[derive(Serialize, Deserialize)]
pub struct ConfigurationRepr {
    pub blocks: Vec<BlockRepr>,
}

#[derive(Serialize, Deserialize)]
pub struct BlockRepr {
    pub n: usize,
    pub points: Vec<PointRepr>,
}

#[derive(Serialize, Deserialize)]
pub struct PointRepr {
    pub n: usize,
    pub x: Vec<Vec<[f64; 2]>>,
    pub y: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
pub struct ProgramFile {
    pub format_version: String,
    pub moves: Vec<MoveRepr>,
}

#[derive(Serialize, Deserialize)]
pub struct MoveRepr {
    pub kind: String,
    pub poly: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
pub struct ReportFile {
    pub format_version: String,
    pub passed: bool,
    pub tol: f64,
    pub verification: Vec<f64>,
    pub stages: Vec<StageRepr>,
    pub certificates: Vec<CertificateRepr>,
}

#[derive(Serialize, Deserialize)]
pub struct StageRepr {
    pub name: String,
    pub moves: usize,
    pub retries: usize,
}

#[derive(Serialize, Deserialize)]
pub struct CertificateRepr {
    pub entries: Vec<CertEntryRepr>,
}

#[derive(Serialize, Deserialize)]
pub struct CertEntryRepr {
    pub description: String,
    pub magnitude: f64,
    pub threshold: f64,
}

fn complex_to_pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

fn pair_to_complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn matrix_to_repr(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.size())
        .map(|i| (0..m.size()).map(|j| complex_to_pair(m.get(i, j))).collect())
        .collect()
}

pub fn matrix_from_repr(n: usize, rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    if rows.len() != n {
        return Err(Error::Format(format!(
            "matrix has {} rows, expected {n}",
            rows.len()
        )));
    }
    let mut out = CMatrix::zeros(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Format(format!(
                "matrix row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (j, &pair) in row.iter().enumerate() {
            out.set(i, j, pair_to_complex(pair));
        }
    }
    if !out.is_finite() {
        return Err(Error::Format("matrix entries must be finite".into()));
    }
    Ok(out)
}

pub fn point_to_repr(p: &CMPoint) -> PointRepr {
    PointRepr {
        n: p.size(),
        x: matrix_to_repr(p.x()),
        y: matrix_to_repr(p.y()),
    }
}

pub fn point_from_repr(repr: &PointRepr) -> Result<CMPoint> {
    if repr.n == 0 {
        return Err(Error::Format("point size must be >= 1".into()));
    }
    let x = matrix_from_repr(repr.n, &repr.x)?;
    let y = matrix_from_repr(repr.n, &repr.y)?;
    CMPoint::from_matrices(x, y)
}

pub fn configuration_to_repr(cfg: &Configuration) -> ConfigurationRepr {
    ConfigurationRepr {
        blocks: cfg
            .blocks
            .iter()
            .map(|b| BlockRepr {
                n: b.n,
                points: b.points.iter().map(point_to_repr).collect(),
            })
            .collect(),
    }
}

pub fn configuration_from_repr(repr: &ConfigurationRepr) -> Result<Configuration> {
    let mut blocks = Vec::with_capacity(repr.blocks.len());
    for (bi, b) in repr.blocks.iter().enumerate() {
        let mut points = Vec::with_capacity(b.points.len());
        for p in &b.points {
            if p.n != b.n {
                return Err(Error::Format(format!(
                    "block {bi} has size {} but contains a point of size {}",
                    b.n, p.n
                )));
            }
            points.push(point_from_repr(p)?);
        }
        blocks.push(ConfigBlock { n: b.n, points });
    }
    Ok(Configuration { blocks })
}

pub fn program_to_repr(prog: &Program) -> ProgramFile {
    ProgramFile {
        format_version: FORMAT_VERSION.into(),
        moves: prog
            .moves()
            .iter()
            .map(|m| MoveRepr {
                kind: m.kind.label().into(),
                poly: m.poly.coeffs().iter().map(|&c| complex_to_pair(c)).collect(),
            })
            .collect(),
    }
}

pub fn program_from_repr(file: &ProgramFile) -> Result<Program> {
    check_version(&file.format_version)?;
    let mut moves = Vec::with_capacity(file.moves.len());
    for (k, m) in file.moves.iter().enumerate() {
        let kind = MoveKind::parse(&m.kind)?;
        if m.poly.len() > DEGREE_CAP + 1 {
            return Err(Error::Format(format!(
                "move {k} has degree {} beyond the cap {DEGREE_CAP}",
                m.poly.len() - 1
            )));
        }
        let coeffs: Vec<Complex64> = m.poly.iter().map(|&p| pair_to_complex(p)).collect();
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Format(format!("move {k} has non-finite coefficients")));
        }
        moves.push(Move::new(kind, Poly::new(coeffs)));
    }
    Ok(Program::from_moves(moves))
}

pub fn report_to_repr(report: &SolveReport) -> ReportFile {
    ReportFile {
        format_version: FORMAT_VERSION.into(),
        passed: report.passed,
        tol: report.tol,
        verification: report.verification.clone(),
        stages: report
            .stages
            .iter()
            .map(|s| StageRepr {
                name: s.name.clone(),
                moves: s.moves,
                retries: s.retries,
            })
            .collect(),
        certificates: report
            .certificates
            .iter()
            .map(|c| CertificateRepr {
                entries: c
                    .entries
                    .iter()
                    .map(|e| CertEntryRepr {
                        description: e.description.clone(),
                        magnitude: e.magnitude,
                        threshold: e.threshold,
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn report_stats_from_repr(file: &ReportFile) -> Result<(Vec<StageStats>, Vec<Certificate>)> {
    check_version(&file.format_version)?;
    let stages = file
        .stages
        .iter()
        .map(|s| StageStats {
            name: s.name.clone(),
            moves: s.moves,
            retries: s.retries,
        })
        .collect();
    let certificates = file
        .certificates
        .iter()
        .map(|c| Certificate {
            entries: c
                .entries
                .iter()
                .map(|e| CertEntry {
                    description: e.description.clone(),
                    magnitude: e.magnitude,
                    threshold: e.threshold,
                })
                .collect(),
        })
        .collect();
    Ok((stages, certificates))
}

fn check_version(version: &str) -> Result<()> {
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported format_version {version:?}, expected {FORMAT_VERSION:?}"
        )));
    }
    Ok(())
}

/// Pretty JSON with every float printed as 17-significant-digit scientific
/// notation.
struct SciPretty {
    inner: serde_json::ser::PrettyFormatter<'static>,
}

impl SciPretty {
    fn new() -> Self {
        SciPretty {
            inner: serde_json::ser::PrettyFormatter::new(),
        }
    }
}

impl serde_json::ser::Formatter for SciPretty {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_value(writer)
    }
}

/// Serializes any schema value to the repository's canonical bytes.
pub fn to_canonical_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciPretty::new());
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Format(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

fn parse<T: for<'de> Deserialize<'de>>(bytes: &[u8]) -> Result<T> {
    serde_json::from_slice(bytes).map_err(|e| Error::Format(e.to_string()))
}

pub fn instance_to_bytes(cfg: &Configuration) -> Result<Vec<u8>> {
    to_canonical_bytes(&InstanceFile {
        format_version: FORMAT_VERSION.into(),
        configuration: configuration_to_repr(cfg),
    })
}

pub fn instance_from_bytes(bytes: &[u8]) -> Result<Configuration> {
    let file: InstanceFile = parse(bytes)?;
    check_version(&file.format_version)?;
    configuration_from_repr(&file.configuration)
}

pub fn program_to_bytes(prog: &Program) -> Result<Vec<u8>> {
    to_canonical_bytes(&program_to_repr(prog))
}

pub fn program_from_bytes(bytes: &[u8]) -> Result<Program> {
    program_from_repr(&parse(bytes)?)
}

pub fn report_to_bytes(report: &SolveReport) -> Result<Vec<u8>> {
    to_canonical_bytes(&report_to_repr(report))
}

pub fn read_instance(path: &Path) -> Result<Configuration> {
    instance_from_bytes(&std::fs::read(path)?)
}

pub fn write_instance(path: &Path, cfg: &Configuration) -> Result<()> {
    Ok(std::fs::write(path, instance_to_bytes(cfg)?)?)
}

pub fn read_program(path: &Path) -> Result<Program> {
    program_from_bytes(&std::fs::read(path)?)
}

pub fn write_program(path: &Path, prog: &Program) -> Result<()> {
    Ok(std::fs::write(path, program_to_bytes(prog)?)?)
}

pub fn write_report(path: &Path, report: &SolveReport) -> Result<()> {
    Ok(std::fs::write(path, report_to_bytes(report)?)?)
}

pub fn read_report_file(path: &Path) -> Result<ReportFile> {
    parse(&std::fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn instance_round_trips_bit_exactly() {
        let cfg = Configuration::new(vec![ConfigBlock {
            n: 2,
            points: vec![CMPoint::random(2, 9, 1.0), CMPoint::random(2, 10, 1.0)],
        }]);
        let bytes = instance_to_bytes(&cfg).unwrap();
        let back = instance_from_bytes(&bytes).unwrap();
        let again = instance_to_bytes(&back).unwrap();
        assert_eq!(bytes, again);
        assert_eq!(
            back.blocks[0].points[0].x().dist_max(cfg.blocks[0].points[0].x()),
            0.0,
            "deserialized values are exact"
        );
    }

    #[test]
    fn program_round_trips_bit_exactly() {
        let prog = Program::from_moves(vec![
            Move::new(
                MoveKind::AddPolyOfYToX,
                Poly::new(vec![c(0.1, -0.25), c(1.0 / 3.0, 2.0)]),
            ),
            Move::new(MoveKind::AddPolyOfXToY, Poly::new(vec![c(-7.5e-11, 0.0)])),
        ]);
        let bytes = program_to_bytes(&prog).unwrap();
        let back = program_from_bytes(&bytes).unwrap();
        let again = program_to_bytes(&back).unwrap();
        assert_eq!(bytes, again);
        for (a, b) in prog.moves().iter().zip(back.moves()) {
            assert_eq!(a.kind, b.kind);
            assert_eq!(a.poly, b.poly);
        }
    }

    #[test]
    fn degree_cap_is_enforced_on_read() {
        let file = ProgramFile {
            format_version: FORMAT_VERSION.into(),
            moves: vec![MoveRepr {
                kind: "X+=p(Y)".into(),
                poly: vec![[1.0, 0.0]; DEGREE_CAP + 2],
            }],
        };
        assert!(matches!(program_from_repr(&file), Err(Error::Format(_))));
    }

    #[test]
    fn bad_version_and_bad_kind_are_rejected() {
        let file = ProgramFile {
            format_version: "0".into(),
            moves: vec![],
        };
        assert!(matches!(program_from_repr(&file), Err(Error::Format(_))));

        let file = ProgramFile {
            format_version: FORMAT_VERSION.into(),
            moves: vec![MoveRepr {
                kind: "X*=p(Y)".into(),
                poly: vec![[0.0, 0.0]],
            }],
        };
        assert!(matches!(program_from_repr(&file), Err(Error::Format(_))));
    }

    #[test]
    fn truncated_bytes_are_malformed() {
        let cfg = Configuration::new(vec![ConfigBlock {
            n: 1,
            points: vec![CMPoint::random(1, 1, 1.0)],
        }]);
        let bytes = instance_to_bytes(&cfg).unwrap();
        let truncated = &bytes[..bytes.len() / 2];
        assert!(matches!(instance_from_bytes(truncated), Err(Error::Format(_))));
    }
}
