//! The JSON instance file: schema, parsing, validation, and the golden
//! kernel matrix.
//!
//! Every scalar is serialized as a string ("p/q" for rationals, the residue
//! for prime fields) so arbitrary precision survives any JSON parser. The
//! file also stores the kernel matrix computed at generation time; `verify`
//! recomputes it entry by entry, which catches files mutated after
//! generation.

use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use kerndet_core::{
    BigInt, Fp, LeftTriplet, PrimeField, Rational, RightTriplet, Scalar, SextupleSystem,
    SymmetricSystem,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    General,
    Symmetric,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedInfo {
    pub seed: u64,
    pub range: i64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub schema: String,
    pub mode: Mode,
    pub n: usize,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<SeedInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<[String; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<[String; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triplets: Option<Vec<[String; 3]>>,
    /// Kernel matrix recorded at generation time (golden data).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<Vec<String>>>,
}

/// Which exact field the instance lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(PrimeField),
}

impl FieldSpec {
    pub fn parse(text: &str) -> Result<Self> {
        if text == "rational" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p_txt) = text.strip_prefix("prime:") {
            let p: u64 = p_txt
                .parse()
                .with_context(|| format!("bad prime in field spec {text:?}"))?;
            let field = PrimeField::new(p).map_err(|e| anyhow!("field spec {text:?}: {e}"))?;
            return Ok(FieldSpec::Prime(field));
        }
        bail!("field must be \"rational\" or \"prime:P\", got {text:?}")
    }

    pub fn canonical(&self) -> String {
        match self {
            FieldSpec::Rational => "rational".into(),
            FieldSpec::Prime(f) => format!("prime:{}", f.modulus()),
        }
    }
}

/// A validated in-memory instance.
pub enum LoadedInstance {
    RationalGeneral(SextupleSystem<Rational>),
    RationalSymmetric(SymmetricSystem<Rational>),
    PrimeGeneral(SextupleSystem<Fp>),
    PrimeSymmetric(SymmetricSystem<Fp>),
}

impl LoadedInstance {
    pub fn mode(&self) -> Mode {
        match self {
            LoadedInstance::RationalGeneral(_) | LoadedInstance::PrimeGeneral(_) => Mode::General,
            _ => Mode::Symmetric,
        }
    }
}

fn parse_rational(text: &str) -> Result<Rational> {
    Rational::from_str(text).map_err(|e| anyhow!("bad rational {text:?}: {e}"))
}

fn parse_residue(text: &str, field: &PrimeField) -> Result<Fp> {
    let value = BigInt::from_str(text).map_err(|_| anyhow!("bad residue {text:?}"))?;
    Ok(field.element_from_bigint(&value))
}

fn parse_triplets<T: Scalar>(
    rows: &[[String; 3]],
    parse: &impl Fn(&str) -> Result<T>,
) -> Result<Vec<[T; 3]>> {
    rows.iter()
        .map(|row| Ok([parse(&row[0])?, parse(&row[1])?, parse(&row[2])?]))
        .collect()
}

fn build_general<T: Scalar>(
    left: &[[String; 3]],
    right: &[[String; 3]],
    parse: &impl Fn(&str) -> Result<T>,
) -> Result<SextupleSystem<T>> {
    let left = parse_triplets(left, parse)?
        .into_iter()
        .map(|[u, v, k]| LeftTriplet::new(u, v, k))
        .collect();
    let right = parse_triplets(right, parse)?
        .into_iter()
        .map(|[x, y, l]| RightTriplet::new(x, y, l))
        .collect();
    SextupleSystem::new(left, right).map_err(|e| anyhow!("invalid system: {e}"))
}

fn build_symmetric<T: Scalar>(
    triplets: &[[String; 3]],
    parse: &impl Fn(&str) -> Result<T>,
) -> Result<SymmetricSystem<T>> {
    let triplets = parse_triplets(triplets, parse)?
        .into_iter()
        .map(|[u, v, k]| LeftTriplet::new(u, v, k))
        .collect();
    SymmetricSystem::new(triplets).map_err(|e| anyhow!("invalid symmetric system: {e}"))
}

pub fn load(path: &Path) -> Result<(InstanceFile, LoadedInstance)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file: InstanceFile = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse {}", path.display()))?;
    let loaded = validate(&file)?;
    Ok((file, loaded))
}

pub fn validate(file: &InstanceFile) -> Result<LoadedInstance> {
    if file.schema != SCHEMA_VERSION {
        bail!("unsupported schema version {:?}", file.schema);
    }
    let field = FieldSpec::parse(&file.field)?;
    let expect_len = file.n + 1;
    let check_len = |name: &str, len: usize| -> Result<()> {
        if len != expect_len {
            bail!("{name} holds {len} triplets, expected n+1 = {expect_len}");
        }
        Ok(())
    };
    match (file.mode, &field) {
        (Mode::General, FieldSpec::Rational) => {
            let left = file.left.as_ref().ok_or_else(|| anyhow!("missing left"))?;
            let right = file.right.as_ref().ok_or_else(|| anyhow!("missing right"))?;
            check_len("left", left.len())?;
            check_len("right", right.len())?;
            Ok(LoadedInstance::RationalGeneral(build_general(
                left,
                right,
                &parse_rational,
            )?))
        }
        (Mode::General, FieldSpec::Prime(f)) => {
            let left = file.left.as_ref().ok_or_else(|| anyhow!("missing left"))?;
            let right = file.right.as_ref().ok_or_else(|| anyhow!("missing right"))?;
            check_len("left", left.len())?;
            check_len("right", right.len())?;
            Ok(LoadedInstance::PrimeGeneral(build_general(
                left,
                right,
                &|s| parse_residue(s, f),
            )?))
        }
        (Mode::Symmetric, FieldSpec::Rational) => {
            let triplets = file
                .triplets
                .as_ref()
                .ok_or_else(|| anyhow!("missing triplets"))?;
            check_len("triplets", triplets.len())?;
            Ok(LoadedInstance::RationalSymmetric(build_symmetric(
                triplets,
                &parse_rational,
            )?))
        }
        (Mode::Symmetric, FieldSpec::Prime(f)) => {
            let triplets = file
                .triplets
                .as_ref()
                .ok_or_else(|| anyhow!("missing triplets"))?;
            check_len("triplets", triplets.len())?;
            Ok(LoadedInstance::PrimeSymmetric(build_symmetric(
                triplets,
                &|s| parse_residue(s, f),
            )?))
        }
    }
}

fn triplet_strings<T: Scalar>(items: &[[&T; 3]]) -> Vec<[String; 3]> {
    items
        .iter()
        .map(|[a, b, c]| [a.to_string(), b.to_string(), c.to_string()])
        .collect()
}

fn kernel_strings<T: Scalar>(sys: &SextupleSystem<T>) -> Vec<Vec<String>> {
    let size = sys.size();
    let m = sys.kernel_matrix(size).expect("full size in range");
    (0..size)
        .map(|r| (0..size).map(|c| m.at(r, c).to_string()).collect())
        .collect()
}

/// Assemble the file for a freshly generated general system.
pub fn file_from_general<T: Scalar>(
    sys: &SextupleSystem<T>,
    field: &FieldSpec,
    seed: SeedInfo,
) -> InstanceFile {
    InstanceFile {
        schema: SCHEMA_VERSION.into(),
        mode: Mode::General,
        n: sys.n(),
        field: field.canonical(),
        seed: Some(seed),
        left: Some(triplet_strings(
            &sys.left()
                .iter()
                .map(|t| [&t.u, &t.v, &t.k])
                .collect::<Vec<_>>(),
        )),
        right: Some(triplet_strings(
            &sys.right()
                .iter()
                .map(|t| [&t.x, &t.y, &t.l])
                .collect::<Vec<_>>(),
        )),
        triplets: None,
        kernel: Some(kernel_strings(sys)),
    }
}

/// Assemble the file for a freshly generated symmetric system; the golden
/// kernel is the lifted one.
pub fn file_from_symmetric<T: Scalar>(
    sym: &SymmetricSystem<T>,
    field: &FieldSpec,
    seed: SeedInfo,
) -> InstanceFile {
    InstanceFile {
        schema: SCHEMA_VERSION.into(),
        mode: Mode::Symmetric,
        n: sym.n(),
        field: field.canonical(),
        seed: Some(seed),
        left: None,
        right: None,
        triplets: Some(triplet_strings(
            &sym.triplets()
                .iter()
                .map(|t| [&t.u, &t.v, &t.k])
                .collect::<Vec<_>>(),
        )),
        kernel: Some(kernel_strings(&sym.lift())),
    }
}

/// Deterministic serialization: fixed field order, pretty-printed, trailing
/// newline.
pub fn to_json(file: &InstanceFile) -> String {
    let mut text = serde_json::to_string_pretty(file).expect("instance serializes");
    text.push('\n');
    text
}

/// Compare the stored kernel against a recomputation; returns the first
/// mismatch as (row, col, stored, recomputed).
pub fn golden_kernel_mismatch<T: Scalar>(
    stored: &[Vec<String>],
    sys: &SextupleSystem<T>,
) -> Result<Option<(usize, usize, String, String)>> {
    let size = sys.size();
    if stored.len() != size || stored.iter().any(|row| row.len() != size) {
        bail!("kernel block has wrong shape");
    }
    let recomputed = sys.kernel_matrix(size).expect("full size in range");
    for r in 0..size {
        for c in 0..size {
            let fresh = recomputed.at(r, c).to_string();
            if stored[r][c] != fresh {
                return Ok(Some((r, c, stored[r][c].clone(), fresh)));
            }
        }
    }
    Ok(None)
}
