//! JSON encodings of every input and output type.
//!
//! Coefficients are strings (`"p/q"` or decimal). Serializers emit keys and
//! terms in a fixed order so equal values always print identically, and
//! `parse(serialize(x)) == x` exactly. Parse errors carry the JSON path of
//! the offending field.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::cdga::{
    exterior, heisenberg, mapping_torus, surface, trivial_rank2, BasisSymbol, CdgaModel, Element, FormField, McData,
    Twist,
};
use crate::error::{Error, Result};
use crate::fpgroup::Presentation;
use crate::jetcore::{FieldKind, JetDiffeo, JetMap, Matrix, MultiIndex, Scalar};
use crate::jetgroup::{LevyCoords, PolyVector, G31};
use crate::obstruction::Representation;

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

/// Pretty-printed text with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn as_obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(path, "expected an object"))
}

fn as_arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::parse(path, "expected a string"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

fn as_i32(v: &Value, path: &str) -> Result<i32> {
    v.as_i64()
        .and_then(|n| i32::try_from(n).ok())
        .ok_or_else(|| Error::parse(path, "expected an integer"))
}

fn get<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    o.get(key)
        .ok_or_else(|| Error::parse(join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn at(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

/// Field tag of a document, if it carries one.
pub fn field_tag(v: &Value) -> Result<Option<FieldKind>> {
    match v.get("field") {
        None => Ok(None),
        Some(t) => Ok(Some(as_str(t, "field")?.parse().map_err(|e: Error| e.within(""))?)),
    }
}

fn check_field<F: Scalar>(o: &Map<String, Value>, path: &str) -> Result<()> {
    if let Some(t) = o.get("field") {
        let kind: FieldKind = as_str(t, &join(path, "field"))?
            .parse()
            .map_err(|_| Error::parse(join(path, "field"), format!("unknown field tag {t}")))?;
        if kind != F::FIELD {
            return Err(Error::parse(
                join(path, "field"),
                format!("document is over {kind} but the computation is over {}", F::FIELD),
            ));
        }
    }
    Ok(())
}

pub fn scalar_from_json<F: Scalar>(v: &Value, path: &str) -> Result<F> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::parse(path, "expected a number or a numeric string")),
    };
    F::parse_str(&text).map_err(|e| match e {
        Error::Parse { msg, .. } => Error::parse(path, msg),
        other => other,
    })
}

pub fn scalar_to_json<F: Scalar>(c: &F) -> Value {
    Value::String(c.to_canonical())
}

fn terms_to_json<'a, F: Scalar + 'a>(
    l: usize,
    terms: impl Iterator<Item = (usize, &'a MultiIndex, &'a F)>,
) -> Value {
    let mut comps = vec![Vec::new(); l];
    for (i, j, c) in terms {
        comps[i].push(json!({"exps": j.exps(), "coeff": scalar_to_json(c)}));
    }
    Value::Array(comps.into_iter().map(Value::Array).collect())
}

fn terms_from_json<F: Scalar>(v: &Value, l: usize, path: &str) -> Result<Vec<(usize, MultiIndex, F)>> {
    let comps = as_arr(v, path)?;
    if comps.len() != l {
        return Err(Error::parse(path, format!("expected {l} components, found {}", comps.len())));
    }
    let mut out = Vec::new();
    for (i, comp) in comps.iter().enumerate() {
        let cpath = at(path, i);
        for (t, term) in as_arr(comp, &cpath)?.iter().enumerate() {
            let tpath = at(&cpath, t);
            let o = as_obj(term, &tpath)?;
            let epath = join(&tpath, "exps");
            let exps = as_arr(get(o, "exps", &tpath)?, &epath)?
                .iter()
                .enumerate()
                .map(|(n, e)| {
                    e.as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| Error::parse(at(&epath, n), "expected a non-negative exponent"))
                })
                .collect::<Result<Vec<u32>>>()?;
            if exps.len() != l {
                return Err(Error::parse(epath, format!("expected {l} exponents, found {}", exps.len())));
            }
            let j = MultiIndex::new(exps).map_err(|e| Error::parse(&epath, e.to_string()))?;
            let c = scalar_from_json(get(o, "coeff", &tpath)?, &join(&tpath, "coeff"))?;
            out.push((i, j, c));
        }
    }
    Ok(out)
}

fn located<T>(r: Result<T>, path: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(path, other.to_string()),
    })
}

pub fn jet_to_json<F: Scalar>(m: &JetMap<F>) -> Value {
    json!({
        "l": m.l(),
        "k": m.k(),
        "field": F::FIELD.as_str(),
        "components": terms_to_json(m.l(), m.terms()),
    })
}

pub fn jet_from_json<F: Scalar>(v: &Value, path: &str) -> Result<JetMap<F>> {
    let o = as_obj(v, path)?;
    check_field::<F>(o, path)?;
    let l = as_usize(get(o, "l", path)?, &join(path, "l"))?;
    let k = as_usize(get(o, "k", path)?, &join(path, "k"))?;
    let cpath = join(path, "components");
    let terms = terms_from_json(get(o, "components", path)?, l, &cpath)?;
    located(JetMap::from_terms(l, k, terms), &cpath)
}

pub fn diffeo_from_json<F: Scalar>(v: &Value, path: &str) -> Result<JetDiffeo<F>> {
    located(JetDiffeo::new(jet_from_json(v, path)?), path)
}

pub fn poly_to_json<F: Scalar>(p: &PolyVector<F>) -> Value {
    json!({
        "l": p.l(),
        "degrees": [p.min_degree(), p.max_degree()],
        "field": F::FIELD.as_str(),
        "components": terms_to_json(p.l(), p.terms()),
    })
}

pub fn poly_from_json<F: Scalar>(v: &Value, path: &str) -> Result<PolyVector<F>> {
    let o = as_obj(v, path)?;
    check_field::<F>(o, path)?;
    let l = as_usize(get(o, "l", path)?, &join(path, "l"))?;
    let dpath = join(path, "degrees");
    let degs = as_arr(get(o, "degrees", path)?, &dpath)?;
    if degs.len() != 2 {
        return Err(Error::parse(dpath, "expected [min, max]"));
    }
    let lo = as_usize(&degs[0], &at(&dpath, 0))?;
    let hi = as_usize(&degs[1], &at(&dpath, 1))?;
    let cpath = join(path, "components");
    let terms = terms_from_json(get(o, "components", path)?, l, &cpath)?;
    located(PolyVector::from_terms(l, lo, hi, terms), &cpath)
}

pub fn matrix_to_json<F: Scalar>(m: &Matrix<F>) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json<F: Scalar>(v: &Value, path: &str) -> Result<Matrix<F>> {
    let rows = as_arr(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let rp = at(path, i);
            as_arr(r, &rp)?
                .iter()
                .enumerate()
                .map(|(j, c)| scalar_from_json(c, &at(&rp, j)))
                .collect::<Result<Vec<F>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    located(Matrix::from_rows(rows), path)
}

pub fn levy_to_json<F: Scalar>(c: &LevyCoords<F>) -> Value {
    json!({
        "field": F::FIELD.as_str(),
        "linear": matrix_to_json(&c.linear),
        "nilpotent": poly_to_json(&c.nilpotent),
    })
}

pub fn levy_from_json<F: Scalar>(v: &Value, path: &str) -> Result<LevyCoords<F>> {
    let o = as_obj(v, path)?;
    check_field::<F>(o, path)?;
    Ok(LevyCoords {
        linear: matrix_from_json(get(o, "linear", path)?, &join(path, "linear"))?,
        nilpotent: poly_from_json(get(o, "nilpotent", path)?, &join(path, "nilpotent"))?,
    })
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    json!({
        "generators": p.generators(),
        "relators": p.relators().iter().map(|r| p.word_tokens(r)).collect::<Vec<_>>(),
    })
}

pub fn presentation_from_json(v: &Value, path: &str) -> Result<Presentation> {
    let o = as_obj(v, path)?;
    let gpath = join(path, "generators");
    let gens = as_arr(get(o, "generators", path)?, &gpath)?
        .iter()
        .enumerate()
        .map(|(i, g)| as_str(g, &at(&gpath, i)).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    let shell = located(Presentation::new(gens.clone(), vec![]), &gpath)?;
    let rpath = join(path, "relators");
    let rels = match o.get("relators") {
        None => Vec::new(),
        Some(r) => as_arr(r, &rpath)?
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let wp = at(&rpath, i);
                let tokens = as_arr(w, &wp)?
                    .iter()
                    .enumerate()
                    .map(|(t, x)| as_str(x, &at(&wp, t)))
                    .collect::<Result<Vec<_>>>()?;
                located(shell.parse_word(tokens), &wp)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    located(Presentation::new(gens, rels), path)
}

/// A builtin name, an inline object, or a path relative to `base`.
pub fn presentation_ref(v: &Value, path: &str, base: Option<&Path>) -> Result<Presentation> {
    match v {
        Value::String(s) => match Presentation::builtin(s) {
            Ok(p) => Ok(p),
            Err(_) => {
                let file = base.map_or_else(|| Path::new(s).to_path_buf(), |b| b.join(s));
                if !file.exists() {
                    return Err(Error::parse(path, format!("{s:?} is neither a builtin nor a file")));
                }
                presentation_from_json(&read_json(&file)?, "")
            }
        },
        other => presentation_from_json(other, path),
    }
}

pub fn representation_to_json<F: Scalar>(r: &Representation<F>) -> Value {
    let mut images = Map::new();
    for (name, g) in r.presentation().generators().iter().zip(r.images()) {
        images.insert(name.clone(), jet_to_json(g.map()));
    }
    json!({
        "presentation": presentation_to_json(r.presentation()),
        "l": r.l(),
        "k": r.k(),
        "field": F::FIELD.as_str(),
        "images": images,
    })
}

pub fn representation_from_json<F: Scalar>(v: &Value, path: &str, base: Option<&Path>) -> Result<Representation<F>> {
    let o = as_obj(v, path)?;
    check_field::<F>(o, path)?;
    let p = presentation_ref(get(o, "presentation", path)?, &join(path, "presentation"), base)?;
    let k = as_usize(get(o, "k", path)?, &join(path, "k"))?;
    let l = match o.get("l") {
        Some(x) => as_usize(x, &join(path, "l"))?,
        None => 1,
    };
    let ipath = join(path, "images");
    let imgs = as_obj(get(o, "images", path)?, &ipath)?;
    for name in imgs.keys() {
        located(p.generator_index(name), &join(&ipath, name))?;
    }
    let mut images = Vec::with_capacity(p.num_generators());
    for name in p.generators() {
        let gp = join(&ipath, name);
        let g = imgs
            .get(name)
            .ok_or_else(|| Error::UnassignedGenerator(name.clone()))?;
        let jet = match g {
            Value::Array(chart) => {
                if l != 1 || k > 3 || k == 0 {
                    return Err(Error::parse(gp, "chart shorthand needs l = 1 and k <= 3"));
                }
                if chart.len() != 3 {
                    return Err(Error::parse(gp, "chart shorthand is [a1, a2, a0]"));
                }
                let c = [
                    scalar_from_json(&chart[0], &at(&gp, 0))?,
                    scalar_from_json(&chart[1], &at(&gp, 1))?,
                    scalar_from_json(&chart[2], &at(&gp, 2))?,
                ];
                located(G31::from_array(c).and_then(|c| c.to_jet()?.truncate(k)), &gp)?
            }
            other => diffeo_from_json(other, &gp)?,
        };
        images.push(jet);
    }
    Representation::new(p, l, k, images)
}

pub fn element_to_json<F: Scalar>(m: &CdgaModel<F>, e: &[F]) -> Value {
    let mut o = Map::new();
    for (c, b) in e.iter().zip(m.basis()) {
        if !c.is_zero() {
            o.insert(b.name.clone(), scalar_to_json(c));
        }
    }
    Value::Object(o)
}

pub fn element_from_json<F: Scalar>(m: &CdgaModel<F>, v: &Value, path: &str) -> Result<Element<F>> {
    let mut e = m.zero();
    for (name, c) in as_obj(v, path)? {
        let p = join(path, name);
        let i = m
            .symbol_index(name)
            .map_err(|_| Error::parse(&p, format!("unknown basis symbol {name:?}")))?;
        e[i] += &scalar_from_json(c, &p)?;
    }
    Ok(e)
}

/// `name`, `name:param` or `name(param)` for the builtin models.
pub fn builtin_model<F: Scalar>(source: &str) -> Result<CdgaModel<F>> {
    let source = source.trim();
    let (name, param) = match source.find([':', '(']) {
        Some(i) => (&source[..i], Some(source[i + 1..].trim_end_matches(')'))),
        None => (source, None),
    };
    let need = |what: &str| {
        param.ok_or_else(|| Error::parse("model", format!("builtin {name} needs a {what} parameter")))
    };
    match name {
        "heisenberg" => Ok(heisenberg()),
        "trivial_rank2" | "trivial-rank2" => Ok(trivial_rank2()),
        "surface" => {
            let g = need("genus")?
                .parse::<usize>()
                .map_err(|_| Error::parse("model.params.genus", "expected a positive integer"))?;
            surface(g)
        }
        "mapping_torus" | "mapping-torus" => mapping_torus(F::parse_str(need("lambda")?)?),
        _ => Err(Error::parse("model", format!("unknown builtin model {name:?}"))),
    }
}

pub fn model_to_json<F: Scalar>(m: &CdgaModel<F>) -> Value {
    let basis: Vec<Value> = m
        .basis()
        .iter()
        .map(|b| json!({"name": b.name, "degree": b.degree, "weight": b.weight}))
        .collect();
    let unit = m.symbol_index("1").expect("models have a unit");
    let mut product = Map::new();
    let mut d = Map::new();
    for i in 0..m.dim() {
        for j in i..m.dim() {
            let v = m.product_of(i, j);
            if i != unit && j != unit && v.iter().any(|c| !c.is_zero()) {
                product.insert(format!("{}*{}", m.basis()[i].name, m.basis()[j].name), element_to_json(m, v));
            }
        }
        let di = m.differential_of(i);
        if di.iter().any(|c| !c.is_zero()) {
            d.insert(m.basis()[i].name.clone(), element_to_json(m, di));
        }
    }
    let mut o = Map::new();
    o.insert("name".into(), json!(m.name()));
    o.insert("field".into(), json!(F::FIELD.as_str()));
    o.insert("basis".into(), Value::Array(basis));
    o.insert("product".into(), Value::Object(product));
    o.insert("d".into(), Value::Object(d));
    if let Some(t) = m.twist() {
        o.insert(
            "twist".into(),
            json!({"alpha": element_to_json(m, &t.alpha), "lambda": scalar_to_json(&t.lambda)}),
        );
    }
    if m.coefficient_rank() != 1 {
        o.insert("coefficient_rank".into(), json!(m.coefficient_rank()));
    }
    Value::Object(o)
}

pub fn model_from_json<F: Scalar>(v: &Value, path: &str) -> Result<CdgaModel<F>> {
    if let Value::String(s) = v {
        return builtin_model(s);
    }
    let o = as_obj(v, path)?;
    check_field::<F>(o, path)?;
    if let Some(b) = o.get("builtin") {
        let name = as_str(b, &join(path, "builtin"))?;
        let params = o.get("params").and_then(Value::as_object);
        let param = |key: &str| params.and_then(|p| p.get(key));
        let ppath = join(path, "params");
        return match name {
            "surface" => {
                let key = join(&ppath, "genus");
                let g = as_usize(param("genus").ok_or_else(|| Error::parse(&key, "missing field"))?, &key)?;
                located(surface(g), &key)
            }
            "mapping_torus" => {
                let key = join(&ppath, "lambda");
                let lam = scalar_from_json(param("lambda").ok_or_else(|| Error::parse(&key, "missing field"))?, &key)?;
                located(mapping_torus(lam), &key)
            }
            "exterior" => {
                let key = join(&ppath, "names");
                let names = as_arr(param("names").ok_or_else(|| Error::parse(&key, "missing field"))?, &key)?
                    .iter()
                    .enumerate()
                    .map(|(i, n)| as_str(n, &at(&key, i)))
                    .collect::<Result<Vec<_>>>()?;
                located(exterior(&names), &key)
            }
            other => located(builtin_model(other), &join(path, "builtin")),
        };
    }
    let bpath = join(path, "basis");
    let basis = as_arr(get(o, "basis", path)?, &bpath)?
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let p = at(&bpath, i);
            let bo = as_obj(b, &p)?;
            Ok(BasisSymbol::new(
                as_str(get(bo, "name", &p)?, &join(&p, "name"))?,
                as_usize(get(bo, "degree", &p)?, &join(&p, "degree"))?,
                match bo.get("weight") {
                    Some(w) => as_i32(w, &join(&p, "weight"))?,
                    None => 0,
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    // A validation-free shell to resolve names and lay out elements.
    let n = basis.len();
    let names: Vec<&str> = basis.iter().map(|b| b.name.as_str()).collect();
    let lookup = |name: &str, p: &str| -> Result<usize> {
        names
            .iter()
            .position(|x| *x == name)
            .ok_or_else(|| Error::parse(p, format!("unknown basis symbol {name:?}")))
    };
    let elem = |v: &Value, p: &str| -> Result<Element<F>> {
        let mut e = vec![F::zero(); n];
        for (name, c) in as_obj(v, p)? {
            let cp = join(p, name);
            e[lookup(name, &cp)?] += &scalar_from_json(c, &cp)?;
        }
        Ok(e)
    };
    let mut products = Vec::new();
    if let Some(pv) = o.get("product") {
        let ppath = join(path, "product");
        for (key, val) in as_obj(pv, &ppath)? {
            let kp = join(&ppath, key);
            let (a, b) = key
                .split_once('*')
                .ok_or_else(|| Error::parse(&kp, "product keys have the form \"x*y\""))?;
            products.push((lookup(a.trim(), &kp)?, lookup(b.trim(), &kp)?, elem(val, &kp)?));
        }
    }
    let mut differential = vec![vec![F::zero(); n]; n];
    if let Some(dv) = o.get("d") {
        let dpath = join(path, "d");
        for (key, val) in as_obj(dv, &dpath)? {
            let kp = join(&dpath, key);
            differential[lookup(key, &kp)?] = elem(val, &kp)?;
        }
    }
    let twist = match o.get("twist") {
        None => None,
        Some(t) => {
            let tp = join(path, "twist");
            let to = as_obj(t, &tp)?;
            Some(Twist {
                alpha: elem(get(to, "alpha", &tp)?, &join(&tp, "alpha"))?,
                lambda: scalar_from_json(get(to, "lambda", &tp)?, &join(&tp, "lambda"))?,
            })
        }
    };
    let name = match o.get("name") {
        Some(x) => as_str(x, &join(path, "name"))?.to_string(),
        None => "model".into(),
    };
    let model = located(CdgaModel::new(name, basis, products, differential, twist), path)?;
    match o.get("coefficient_rank") {
        Some(r) => located(model.with_coefficient_rank(as_usize(r, &join(path, "coefficient_rank"))?), path),
        None => Ok(model),
    }
}

fn degree_one(m: &CdgaModel<impl Scalar>) -> Vec<usize> {
    (0..m.dim()).filter(|&i| m.basis()[i].degree == 1).collect()
}

pub fn field_to_json<F: Scalar>(m: &CdgaModel<F>, f: &FormField<F>) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(i, j, w)| json!({"component": i, "exps": j.exps(), "form": element_to_json(m, w)}))
        .collect();
    json!({"degree": f.degree(), "terms": terms})
}

fn field_from_json<F: Scalar>(m: &CdgaModel<F>, v: &Value, degree: usize, path: &str) -> Result<FormField<F>> {
    let l = m.coefficient_rank();
    if l == 1 {
        // Rank one: the form multiplying t^{degree} ∂t.
        let form = match v {
            Value::Array(cs) => {
                let idx = degree_one(m);
                if cs.len() != idx.len() {
                    return Err(Error::parse(
                        path,
                        format!("expected {} coefficients over the degree-1 basis", idx.len()),
                    ));
                }
                let mut e = m.zero();
                for (n, (&i, c)) in idx.iter().zip(cs).enumerate() {
                    e[i] = scalar_from_json(c, &at(path, n))?;
                }
                e
            }
            other => element_from_json(m, other, path)?,
        };
        return Ok(FormField::rank1(degree - 1, form));
    }
    let o = as_obj(v, path)?;
    let tpath = join(path, "terms");
    let mut f = FormField::zero(l, degree)?;
    for (n, t) in as_arr(get(o, "terms", path)?, &tpath)?.iter().enumerate() {
        let p = at(&tpath, n);
        let to = as_obj(t, &p)?;
        let i = as_usize(get(to, "component", &p)?, &join(&p, "component"))?;
        let epath = join(&p, "exps");
        let exps = as_arr(get(to, "exps", &p)?, &epath)?
            .iter()
            .enumerate()
            .map(|(q, e)| as_usize(e, &at(&epath, q)).map(|x| x as u32))
            .collect::<Result<Vec<_>>>()?;
        let j = located(MultiIndex::new(exps), &epath)?;
        let form = element_from_json(m, get(to, "form", &p)?, &join(&p, "form"))?;
        located(f.add_term(i, j, &form), &p)?;
    }
    Ok(f)
}

pub fn mc_to_json<F: Scalar>(m: &CdgaModel<F>, data: &McData<F>) -> Value {
    let eta: Vec<Value> = if m.coefficient_rank() == 1 {
        let idx = degree_one(m);
        data.eta
            .iter()
            .map(|f| {
                let form = f.rank1_form(m);
                Value::Array(idx.iter().map(|&i| scalar_to_json(&form[i])).collect())
            })
            .collect()
    } else {
        data.eta.iter().map(|f| field_to_json(m, f)).collect()
    };
    json!({"k": data.k, "field": F::FIELD.as_str(), "eta": eta})
}

pub fn mc_from_json<F: Scalar>(m: &CdgaModel<F>, v: &Value, path: &str) -> Result<McData<F>> {
    let o = as_obj(v, path)?;
    check_field::<F>(o, path)?;
    let epath = join(path, "eta");
    let raw = as_arr(get(o, "eta", path)?, &epath)?;
    let k = match o.get("k") {
        Some(k) => as_usize(k, &join(path, "k"))?,
        None => raw.len() + 1,
    };
    let eta = raw
        .iter()
        .enumerate()
        .map(|(i, e)| field_from_json(m, e, i + 2, &at(&epath, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(McData { k, eta })
}

/// `ρ₀` as `{"values": {"a1": "1", ...}}` in generator order.
pub fn rho0_from_json<F: Scalar>(p: &Presentation, v: &Value, path: &str) -> Result<Vec<F>> {
    let o = as_obj(v, path)?;
    let vpath = join(path, "values");
    let vals = as_obj(get(o, "values", path)?, &vpath)?;
    for name in vals.keys() {
        located(p.generator_index(name), &join(&vpath, name))?;
    }
    p.generators()
        .iter()
        .map(|g| {
            let x = vals.get(g).ok_or_else(|| Error::UnassignedGenerator(g.clone()))?;
            scalar_from_json(x, &join(&vpath, g))
        })
        .collect()
}

pub fn rho0_to_json<F: Scalar>(p: &Presentation, values: &[F]) -> Value {
    let mut o = Map::new();
    for (g, v) in p.generators().iter().zip(values) {
        o.insert(g.clone(), scalar_to_json(v));
    }
    json!({ "values": o })
}
