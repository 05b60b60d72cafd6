use circblock_core::block::{
    assemble, is_nonnegative_family, s_matrices, spectrum, CirculantBlockMatrix, SFamily,
};
use circblock_core::circulant::Circulant;
use circblock_core::dft::{dft_eigenvalues, idft_coefficients};
use circblock_core::ematrix::{
    min_perron, phi, realize_ematrix, validate_ematrix, BlockGuoResult, EMatrix,
};
use circblock_core::exact::{
    exact_assemble, exact_dft, exact_idft, exact_spectrum, CyclotomicField, ExactBlockMatrix,
    ExactMatrix, GaussianRational,
};
use circblock_core::guo::guo_index;
use circblock_core::poly::{eigenvalues, match_multisets};
use circblock_core::structure::{classify_family, detect_block_structure, StructureReport};
use circblock_core::{CMatrix, Error, Scalar};
use serde_json::{json, Map, Value};

use crate::format::{
    complexes, scalars, BlockMatrixDoc, CirculantDoc, Complex, Document, EMatrixDoc, Meta, Payload,
    Row, SFamilyDoc, SpectrumDoc, Verdict,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;
pub const EXIT_NOT_REALIZABLE: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INVALID,
            CliError::Core(e) => match e {
                Error::NumericFailure { .. } | Error::SearchIncomplete { .. } => EXIT_NUMERIC,
                Error::NotRealizable { .. } => EXIT_NOT_REALIZABLE,
                _ => EXIT_INVALID,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub tol: f64,
    pub exact: bool,
    pub seed: Option<u64>,
    pub max_candidates: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: circblock_core::DEFAULT_TOL,
            exact: false,
            seed: None,
            max_candidates: circblock_core::ematrix::DEFAULT_BUDGET,
        }
    }
}

impl Options {
    fn meta(&self) -> Meta {
        Meta {
            tol: self.tol,
            exact: self.exact,
            seed: self.seed,
            max_candidates: Some(self.max_candidates),
            ..Meta::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: Document,
    pub exit_code: u8,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(payload: Payload, opts: &Options) -> Self {
        Outcome { document: Document::new(payload, opts.meta()), exit_code: EXIT_OK, diagnostics: Vec::new() }
    }

    fn report(command: &str, fields: Value, opts: &Options) -> Self {
        let mut map = Map::new();
        map.insert("command".into(), command.into());
        if let Value::Object(rest) = fields {
            map.extend(rest);
        }
        Outcome::ok(Payload::Report(map), opts)
    }

    fn fail(mut self, code: u8, message: String) -> Self {
        self.exit_code = code;
        self.diagnostics.push(message);
        self
    }
}

fn wrong_kind(doc: &Document, wanted: &str) -> CliError {
    CliError::Input(format!("expected a {wanted} document, found {}", doc.payload.kind()))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn cmatrix(rows: &[Row]) -> Result<CMatrix> {
    Ok(CMatrix::from_rows(rows.iter().map(|r| scalars(r)).collect())?)
}

fn exact_matrix(rows: &[Row]) -> Result<ExactMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(Complex::to_exact).collect::<std::result::Result<Vec<_>, _>>())
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(ExactMatrix::from_rows(rows)?)
}

fn exact_row(row: &[Complex]) -> Result<Vec<GaussianRational>> {
    Ok(row.iter().map(Complex::to_exact).collect::<std::result::Result<_, _>>()?)
}

fn s_family(doc: &SFamilyDoc) -> Result<SFamily> {
    Ok(SFamily::new(doc.matrices.iter().map(|m| cmatrix(m)).collect::<Result<_>>()?)?)
}

fn block_matrix(doc: &BlockMatrixDoc) -> Result<CirculantBlockMatrix> {
    let grid = doc.blocks.iter().map(|r| r.iter().map(|b| scalars(b)).collect()).collect();
    Ok(CirculantBlockMatrix::from_grid(grid)?)
}

fn exact_block_matrix(doc: &BlockMatrixDoc) -> Result<ExactBlockMatrix> {
    let a = block_matrix(doc)?;
    let blocks = doc.blocks.iter().flatten().map(|b| exact_row(b)).collect::<Result<_>>()?;
    Ok(ExactBlockMatrix { n: a.grid_size(), m: a.block_order(), blocks })
}

fn block_doc(a: &CirculantBlockMatrix) -> BlockMatrixDoc {
    BlockMatrixDoc { blocks: a.to_grid().iter().map(|r| r.iter().map(|b| complexes(b)).collect()).collect() }
}

fn exact_block_doc(a: &ExactBlockMatrix) -> BlockMatrixDoc {
    let blocks = (0..a.n)
        .map(|u| (0..a.n).map(|v| a.block(u, v).iter().map(Complex::from).collect()).collect())
        .collect();
    BlockMatrixDoc { blocks }
}

fn e_matrix(doc: &EMatrixDoc) -> Result<EMatrix> {
    Ok(EMatrix::from_rows(doc.rows.iter().map(|r| scalars(r)).collect())?)
}

/// A block-matrix document or an `S`-family document, whichever was given.
enum BlockInput {
    Family(SFamily),
    Matrix(CirculantBlockMatrix),
}

impl BlockInput {
    fn read(doc: &Document) -> Result<Self> {
        match &doc.payload {
            Payload::SFamily(s) => Ok(BlockInput::Family(s_family(s)?)),
            Payload::BlockMatrix(b) => Ok(BlockInput::Matrix(block_matrix(b)?)),
            _ => Err(wrong_kind(doc, "s-family or block-matrix")),
        }
    }

    fn family(&self) -> SFamily {
        match self {
            BlockInput::Family(s) => s.clone(),
            BlockInput::Matrix(a) => s_matrices(a),
        }
    }

    fn matrix(&self) -> CirculantBlockMatrix {
        match self {
            BlockInput::Family(s) => assemble(s),
            BlockInput::Matrix(a) => a.clone(),
        }
    }
}

pub fn circulant_eigs(input: &Document, opts: &Options) -> Result<Outcome> {
    let Payload::Circulant(c) = &input.payload else {
        return Err(wrong_kind(input, "circulant"));
    };
    if c.first_row.is_empty() {
        return Err(CliError::Input("first row must be nonempty".into()));
    }
    let values = if opts.exact {
        let field = CyclotomicField::for_transform(c.first_row.len())?;
        exact_dft(&field, &exact_row(&c.first_row)?)
            .iter()
            .map(|z| field.to_gaussian(z).map_or_else(|| field.to_scalar(z).into(), |g| Complex::from(&g)))
            .collect()
    } else {
        complexes(&dft_eigenvalues(&scalars(&c.first_row))?)
    };
    Ok(Outcome::ok(Payload::Spectrum(SpectrumDoc { values }), opts))
}

pub fn realize_circulant(input: &Document, require_nonnegative: bool, opts: &Options) -> Result<Outcome> {
    let Payload::Spectrum(s) = &input.payload else {
        return Err(wrong_kind(input, "spectrum"));
    };
    if s.values.is_empty() {
        return Err(CliError::Input("spectrum must be nonempty".into()));
    }
    let exact = if opts.exact {
        match exact_idft(&exact_row(&s.values)?) {
            Ok(row) => Some(row.iter().map(Complex::from).collect::<Row>()),
            Err(Error::NotExact(_)) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let first_row = match exact {
        Some(row) => row,
        None => complexes(&idft_coefficients(&scalars(&s.values))?),
    };
    let v = Circulant::from_row(scalars(&first_row))?.nonnegativity(opts.tol);
    let verdict = Verdict { nonnegative: v.nonnegative, min_entry: v.min_entry, max_imag: v.max_imag };
    let out = Outcome::ok(Payload::Circulant(CirculantDoc { first_row, verdict: Some(verdict) }), opts);
    if require_nonnegative && !v.nonnegative {
        let msg = format!("first row is not nonnegative (min entry {:e}, max |imag| {:e})", v.min_entry, v.max_imag);
        return Ok(out.fail(EXIT_NOT_REALIZABLE, msg));
    }
    Ok(out)
}

pub fn guo_circulant(input: &Document, opts: &Options) -> Result<Outcome> {
    let Payload::Spectrum(s) = &input.payload else {
        return Err(wrong_kind(input, "spectrum"));
    };
    let r = guo_index(&scalars(&s.values), opts.tol)?;
    let fields = json!({
        "mode": "circulant",
        "lambda0": r.lambda0,
        "assignment": r.assignment.as_slice(),
        "tail": complexes(&r.tail),
        "witness_first_row": complexes(r.witness.first_row()),
        "witness_min_entry": r.witness.min_entry(),
        "max_modulus": r.max_modulus,
    });
    Ok(Outcome::report("guo", fields, opts))
}

fn block_guo_fields(r: &BlockGuoResult) -> Value {
    json!({
        "minimal_perron": r.minimal_perron,
        "bijection": r.bijection.positions(),
        "layout": r.layout.to_rows().iter().map(|row| complexes(row)).collect::<Vec<_>>(),
        "witness": to_value(&block_doc(&r.witness).blocks),
        "witness_min_entry": r.witness.min_entry(),
        "min_phi": r.min_phi,
        "trace_floor": r.trace_floor,
        "exhaustive": r.exhaustive,
        "certified": r.certified,
        "candidates": r.candidates,
    })
}

pub fn guo_block(input: &Document, opts: &Options) -> Result<Outcome> {
    let Payload::EMatrix(e) = &input.payload else {
        return Err(wrong_kind(input, "e-matrix"));
    };
    let r = min_perron(&e_matrix(e)?, opts.max_candidates, opts.tol)?;
    let mut fields = block_guo_fields(&r);
    fields["mode"] = "block".into();
    Ok(Outcome::report("guo", fields, opts))
}

pub fn block_assemble(input: &Document, opts: &Options) -> Result<Outcome> {
    let Payload::SFamily(doc) = &input.payload else {
        return Err(wrong_kind(input, "s-family"));
    };
    let s = s_family(doc)?;
    if opts.exact {
        let family = doc.matrices.iter().map(|m| exact_matrix(m)).collect::<Result<Vec<_>>>()?;
        match exact_assemble(&family) {
            Ok(a) => return Ok(Outcome::ok(Payload::BlockMatrix(exact_block_doc(&a)), opts)),
            Err(Error::NotExact(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::ok(Payload::BlockMatrix(block_doc(&assemble(&s))), opts))
}

pub fn block_spectrum(input: &Document, opts: &Options) -> Result<Outcome> {
    let block = BlockInput::read(input)?;
    let values = match (&input.payload, opts.exact) {
        (Payload::SFamily(doc), true) => {
            let mut values = Vec::new();
            for m in &doc.matrices {
                values.extend(exact_spectrum(&exact_matrix(m)?)?);
            }
            values
        }
        (Payload::BlockMatrix(doc), true) => {
            let family = s_matrices(&block_matrix(doc)?);
            match exact_block_matrix(doc) {
                Ok(a) if a.n * a.m <= circblock_core::poly::MAX_DEGREE => exact_spectrum(&a.to_dense())?,
                _ => spectrum(&assemble(&family))?.into_inner(),
            }
        }
        _ => circblock_core::block::family_spectrum(&block.family())?.into_inner(),
    };
    Ok(Outcome::ok(Payload::Spectrum(SpectrumDoc { values: complexes(&values) }), opts))
}

fn structure_fields(r: &StructureReport) -> Value {
    json!({
        "diagonal": r.diagonal,
        "circulant": r.circulant,
        "permutatively_equivalent": r.permutatively_equivalent.as_ref().map(|t| t.perms().to_vec()),
        "symmetric_real": r.symmetric_real,
    })
}

pub fn block_classify(input: &Document, opts: &Options) -> Result<Outcome> {
    let report = match BlockInput::read(input)? {
        BlockInput::Family(s) => classify_family(&s, opts.tol),
        BlockInput::Matrix(a) => detect_block_structure(&a, opts.tol),
    };
    Ok(Outcome::report("block classify", structure_fields(&report), opts))
}

pub fn block_check_nonneg(input: &Document, opts: &Options) -> Result<Outcome> {
    let block = BlockInput::read(input)?;
    let nonnegative = is_nonnegative_family(&block.family(), opts.tol);
    let fields = json!({ "nonnegative": nonnegative, "min_entry": block.matrix().min_entry() });
    Ok(Outcome::report("block check-nonneg", fields, opts))
}

fn read_ematrix(input: &Document) -> Result<EMatrix> {
    match &input.payload {
        Payload::EMatrix(e) => e_matrix(e),
        _ => Err(wrong_kind(input, "e-matrix")),
    }
}

pub fn ematrix_validate(input: &Document, opts: &Options) -> Result<Outcome> {
    let r = validate_ematrix(&read_ematrix(input)?, opts.tol);
    let passes = r.passes();
    let fields = json!({
        "passes": passes,
        "conjugation_closed": r.conjugation_closed,
        "perron_real_positive": r.perron_real_positive,
        "perron_max_modulus": r.perron_max_modulus,
        "first_column_realizable": r.first_column_realizable,
        "conjugate_columns": r.conjugate_columns,
        "middle_column_real": r.middle_column_real,
        "real_blocks": r.real_blocks,
        "first_column_min_entry": r.first_column_min_entry,
    });
    let out = Outcome::report("ematrix validate", fields, opts);
    Ok(if passes { out } else { out.fail(EXIT_INVALID, "layout fails validation".into()) })
}

pub fn ematrix_phi(input: &Document, opts: &Options) -> Result<Outcome> {
    let e = read_ematrix(input)?;
    let fields = json!({ "phi": phi(&e, opts.tol)?, "perron": e.perron(), "trace_floor": e.trace_floor() });
    Ok(Outcome::report("ematrix phi", fields, opts))
}

pub fn ematrix_realize(input: &Document, opts: &Options) -> Result<Outcome> {
    match realize_ematrix(&read_ematrix(input)?, opts.tol) {
        Ok(r) => Ok(Outcome::ok(Payload::BlockMatrix(block_doc(&r.matrix)), opts)),
        Err(Error::NotRealizable { perron, phi }) => {
            let fields = json!({ "realizable": false, "perron": perron, "phi": phi });
            let msg = format!("Perron entry {perron} is below Φ = {phi}");
            Ok(Outcome::report("ematrix realize", fields, opts).fail(EXIT_NOT_REALIZABLE, msg))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn ematrix_min_perron(input: &Document, opts: &Options) -> Result<Outcome> {
    let r = min_perron(&read_ematrix(input)?, opts.max_candidates, opts.tol)?;
    Ok(Outcome::report("ematrix min-perron", block_guo_fields(&r), opts))
}

/// Compares the spectrum of the full matrix, computed from its characteristic
/// polynomial, against a claimed spectrum.
pub fn verify(matrix: &Document, claimed: &Document, match_tol: f64, opts: &Options) -> Result<Outcome> {
    let Payload::BlockMatrix(doc) = &matrix.payload else {
        return Err(wrong_kind(matrix, "block-matrix"));
    };
    let Payload::Spectrum(s) = &claimed.payload else {
        return Err(wrong_kind(claimed, "spectrum"));
    };
    let a = block_matrix(doc)?;
    let oracle = if opts.exact {
        exact_spectrum(&exact_block_matrix(doc)?.to_dense())?
    } else {
        eigenvalues(&a.to_dense())?
    };
    let claimed: Vec<Scalar> = scalars(&s.values);
    let distance = if claimed.len() == oracle.len() { match_multisets(&oracle, &claimed)? } else { f64::INFINITY };
    let matched = distance <= match_tol;
    let fields = json!({
        "matched": matched,
        "max_distance": if distance.is_finite() { Value::from(distance) } else { Value::Null },
        "match_tol": match_tol,
        "dimension": a.dimension(),
        "claimed_size": claimed.len(),
        "oracle_spectrum": complexes(&oracle),
    });
    let out = Outcome::report("verify", fields, opts);
    Ok(if matched {
        out
    } else {
        out.fail(EXIT_NOT_REALIZABLE, format!("spectra differ (max matched distance {distance:e})"))
    })
}
