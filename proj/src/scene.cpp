#include "cpc/scene.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cpc {

// ---------------------------------------------------------------------------
// nested key-value parser

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  const std::string& origin;
  int line = 1;

  bool eof() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  void advance() {
    if (s[i] == '\n') ++line;
    ++i;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidScene(origin + ":" + std::to_string(line) + ": " + msg);
  }
  void skip_space_and_comments() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == ';') {
        advance();
      } else {
        return;
      }
    }
  }
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         c == '/' || c == '+';
}

std::string read_ident(Cursor& c) {
  std::string out;
  while (!c.eof() && ident_char(c.peek())) {
    out += c.peek();
    c.advance();
  }
  if (out.empty()) c.fail("expected an identifier");
  return out;
}

double parse_number(Cursor& c, const std::string& tok) {
  try {
    size_t pos = 0;
    double x = std::stod(tok, &pos);
    if (pos != tok.size()) c.fail("malformed number '" + tok + "'");
    return x;
  } catch (const std::exception&) {
    c.fail("malformed number '" + tok + "'");
  }
}

void parse_block(Cursor& c, KV& kv, bool top_level) {
  while (true) {
    c.skip_space_and_comments();
    if (c.eof()) {
      if (!top_level) c.fail("unterminated block");
      return;
    }
    if (c.peek() == '}') {
      if (top_level) c.fail("unmatched '}'");
      c.advance();
      return;
    }
    std::string key = read_ident(c);
    c.skip_space_and_comments();
    if (c.eof()) c.fail("dangling key '" + key + "'");
    char ch = c.peek();
    if (ch == '{') {
      c.advance();
      auto child = std::make_shared<KV>();
      parse_block(c, *child, false);
      kv.children[key] = child;
    } else if (ch == '=') {
      c.advance();
      c.skip_space_and_comments();
      if (c.eof()) c.fail("missing value for '" + key + "'");
      if (c.peek() == '[') {
        c.advance();
        std::vector<double> arr;
        while (true) {
          c.skip_space_and_comments();
          if (c.eof()) c.fail("unterminated array for '" + key + "'");
          if (c.peek() == ']') {
            c.advance();
            break;
          }
          if (c.peek() == ',') {
            c.advance();
            continue;
          }
          std::string tok = read_ident(c);
          arr.push_back(parse_number(c, tok));
        }
        kv.arrays[key] = arr;
      } else {
        kv.values[key] = read_ident(c);
      }
    } else {
      c.fail("expected '=' or '{' after '" + key + "'");
    }
  }
}

}  // namespace

std::string KV::str(const std::string& k, const std::string& fallback) const {
  auto it = values.find(k);
  return it == values.end() ? fallback : it->second;
}

double KV::num(const std::string& k, std::optional<double> fallback) const {
  auto it = values.find(k);
  if (it == values.end()) {
    if (fallback) return *fallback;
    throw InvalidScene("missing numeric key '" + k + "'");
  }
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw InvalidScene("key '" + k + "' is not a number: '" + it->second + "'");
  }
}

int KV::integer(const std::string& k, std::optional<int> fallback) const {
  double x = num(k, fallback ? std::optional<double>(*fallback) : std::nullopt);
  int n = int(std::lround(x));
  if (std::abs(x - n) > 1e-12) throw InvalidScene("key '" + k + "' must be an integer");
  return n;
}

KV parse_kv_text(const std::string& text, const std::string& origin) {
  Cursor c{text, 0, origin};
  KV kv;
  parse_block(c, kv, true);
  return kv;
}

KV parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidScene("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_kv_text(ss.str(), path);
}

// ---------------------------------------------------------------------------
// scene

SceneSpec parse_scene_text(const std::string& text, const std::string& origin) {
  KV kv = parse_kv_text(text, origin);
  SceneSpec sc;
  sc.path = origin;
  sc.name = kv.str("name", "unnamed");
  if (!kv.values.count("space")) throw InvalidScene(origin + ": missing 'space'");
  sc.space = SpaceForm::from_name(kv.str("space"));
  sc.kind = kv.str("kind");
  if (sc.kind.empty()) throw InvalidScene(origin + ": missing 'kind'");
  sc.r = kv.num("r", 1.0);
  sc.eps_p = kv.integer("eps_p", 1);
  sc.eps_pp = kv.integer("eps_pp", 1);
  if (const KV* d = kv.child("domain")) {
    if (d->has("u0") || d->has("u1"))
      sc.u_domain = Interval{d->num("u0"), d->num("u1")};
    if (d->has("v0") || d->has("v1"))
      sc.v_domain = Interval{d->num("v0"), d->num("v1")};
  }
  if (const KV* g = kv.child("grid")) {
    sc.nu = g->integer("nu", 64);
    sc.nv = g->integer("nv", 64);
  }
  if (sc.nu < 2 || sc.nv < 2) throw InvalidScene(origin + ": grid must be at least 2x2");
  if (const KV* t = kv.child("tol")) {
    sc.tol.kappa = t->num("kappa", sc.tol.kappa);
    sc.tol.quadric = t->num("quadric", sc.tol.quadric);
    sc.tol.foliation = t->num("foliation", sc.tol.foliation);
    sc.tol.reconstruction = t->num("reconstruction", sc.tol.reconstruction);
    sc.tol.polar = t->num("polar", sc.tol.polar);
  }
  sc.raw = kv;
  return sc;
}

SceneSpec parse_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidScene("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scene_text(ss.str(), path);
}

void validate_scene(const SceneSpec& scene) {
  static const std::vector<std::string> kinds = {"elliptic", "hyperbolic", "parabolic",
                                                 "example", "external"};
  bool known = false;
  for (auto& k : kinds) known = known || k == scene.kind;
  if (!known) throw InvalidScene(scene.path + ": unknown kind '" + scene.kind + "'");
  if (scene.r <= 0) throw InvalidScene(scene.path + ": r must be positive");
  if (std::abs(scene.eps_p) != 1 || std::abs(scene.eps_pp) != 1)
    throw InvalidScene(scene.path + ": eps_p and eps_pp must be +-1");
  if (scene.is_tube_kind()) {
    Classification cl = classify_spec(scene.space, scene.eps_p, scene.eps_pp, scene.r);
    if (to_string(cl.kind) != scene.kind)
      throw WrongClassification(scene.path + ": signs give a " + to_string(cl.kind) +
                                " tube (row " + std::to_string(cl.row_id) +
                                "), scene says " + scene.kind);
  }
}

Profile profile_from_kv(const KV& kv) {
  std::string kind = kv.str("kind", "const");
  if (kind == "const") return profile_const(kv.num("value", 1.0));
  if (kind == "poly") {
    auto it = kv.arrays.find("coeffs");
    if (it == kv.arrays.end()) throw InvalidScene("poly profile needs coeffs = [...]");
    return profile_poly(it->second);
  }
  if (kind == "cubic_ramp") return profile_cubic_ramp(kv.num("scale", 1.0));
  if (kind == "bump") return profile_bump(kv.num("amp", 1.0));
  throw InvalidScene("unknown profile kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// generator construction

namespace {

std::vector<std::pair<double, Vec4d>> read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidScene("cannot open samples file '" + path + "'");
  std::vector<std::pair<double, Vec4d>> rows;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    double u, x1, x2, x3, x4;
    if (ls >> u >> x1 >> x2 >> x3 >> x4) rows.push_back({u, Vec4d(x1, x2, x3, x4)});
  }
  if (rows.size() < 4) throw InvalidScene("samples file '" + path + "' has fewer than 4 rows");
  return rows;
}

Vec4d pick_normal_direction(const Curve& curve, int sign, const std::vector<Vec4d>& found) {
  CurveJet j = curve.jet(curve.domain.a);
  const int p = curve.space.p;
  std::vector<std::pair<Vec4d, double>> against;
  if (!curve.space.flat()) against.emplace_back(j.point, inner(j.point, j.point, p));
  against.emplace_back(j.d1, inner(j.d1, j.d1, p));
  for (auto& e : found) against.emplace_back(e, inner(e, e, p));
  int max_axis = curve.space.flat() ? 3 : 4;
  for (int a = 0; a < max_axis; ++a) {
    Vec4d w = Vec4d::Zero();
    w[a] = 1.0;
    try {
      return metric_normalize(w, sign, p, against);
    } catch (const FrameSignatureUnavailable&) {
      continue;
    }
  }
  throw FrameSignatureUnavailable("no initial frame vector with the requested sign");
}

FramedCurve curve_from_kv(const KV& scene_kv, const SceneSpec& scene) {
  const KV* ck = scene_kv.child("curve");
  if (!ck) throw InvalidScene(scene.path + ": tube scenes need a curve { ... } block");
  std::string family = ck->str("family");
  if (family.empty()) throw InvalidScene(scene.path + ": curve block needs 'family'");

  Interval dom = scene.u_domain.value_or(Interval{0.0, 2.0 * M_PI});
  FramedCurve fc;
  if (family == "circle") {
    fc = families::circle(SpaceForm::from_name(ck->str("space", "e3")), ck->num("R", 3.0));
  } else if (family == "circle_timelike_e1") {
    fc = families::circle_timelike_e1(ck->num("R", 5.0));
  } else if (family == "line") {
    fc = families::line(SpaceForm::from_name(ck->str("space", "e3")), ck->integer("axis", 1));
  } else if (family == "great_circle") {
    fc = families::great_circle_s3();
  } else if (family == "h3_geodesic") {
    fc = families::h3_geodesic();
  } else if (family == "ds3_geodesic_spacelike") {
    fc = families::ds3_geodesic_spacelike();
  } else if (family == "ds3_geodesic_spacelike_sw") {
    fc = families::ds3_geodesic_spacelike_sw();
  } else if (family == "ds3_geodesic_timelike") {
    fc = families::ds3_geodesic_timelike();
  } else if (family == "ads3_geodesic_spacelike") {
    fc = families::ads3_geodesic_spacelike();
  } else if (family == "ads3_geodesic_timelike") {
    fc = families::ads3_geodesic_timelike();
  } else if (family == "ads3t_geodesic") {
    fc = families::ads3t_geodesic();
  } else if (family == "flat_tube") {
    const KV* pk = ck->child("profile");
    if (!pk) throw InvalidScene(scene.path + ": flat_tube needs a profile block");
    int p = SpaceForm::from_name(ck->str("space", "e3")).p;
    fc = families::flat_tube_curve(p, profile_from_kv(*pk), dom);
  } else if (family == "ds3_exponential") {
    const KV* pk = ck->child("profile");
    if (!pk) throw InvalidScene(scene.path + ": ds3_exponential needs a profile block");
    fc = families::ds3_exponential_curve(profile_from_kv(*pk), dom,
                                         ck->integer("steps", 2048));
  } else if (family == "samples") {
    auto rows = read_samples_file(ck->str("file"));
    std::vector<double> us;
    std::vector<Vec4d> xs;
    for (auto& [u, x] : rows) {
      us.push_back(u);
      xs.push_back(x);
    }
    Curve base = spline_curve(scene.space, std::move(us), std::move(xs));
    std::array<int, 2> sig{ck->integer("sig1", 1), ck->integer("sig2", 1)};
    Vec4d e1 = pick_normal_direction(base, sig[0], {});
    Vec4d e2 = pick_normal_direction(base, sig[1], {e1});
    fc = transport_normal_frame(base, e1, e2, sig, ck->integer("steps", 2048));
  } else {
    throw InvalidScene(scene.path + ": unknown curve family '" + family + "'");
  }
  if (scene.u_domain) fc.domain = *scene.u_domain;
  return fc;
}

ParabolicData parabolic_from_kv(const KV& scene_kv, const SceneSpec& scene) {
  const KV* ck = scene_kv.child("curve");
  if (!ck) throw InvalidScene(scene.path + ": parabolic scenes need a curve { ... } block");
  std::string family = ck->str("family");
  Interval dom = scene.u_domain.value_or(Interval{-1.5, 1.5});
  ParabolicData pd;
  if (family == "h3_parabolic_geodesic") {
    pd = families::h3_parabolic_geodesic();
  } else if (family == "ds3_parabolic_geodesic") {
    pd = families::ds3_parabolic_geodesic();
  } else if (family == "ads3_parabolic_geodesic") {
    pd = families::ads3_parabolic_geodesic();
  } else if (family == "h3_parabolic_ab") {
    const KV* ak = ck->child("a");
    const KV* bk = ck->child("b");
    if (!ak || !bk) throw InvalidScene(scene.path + ": h3_parabolic_ab needs a{} and b{}");
    pd = families::h3_parabolic_ab(profile_from_kv(*ak), profile_from_kv(*bk), dom,
                                   ck->integer("steps", 2048));
  } else {
    throw InvalidScene(scene.path + ": unknown parabolic family '" + family + "'");
  }
  if (scene.u_domain) pd.domain = *scene.u_domain;
  return pd;
}

SurfacePatch external_from_kv(const KV& scene_kv, const SceneSpec& scene) {
  const KV* ek = scene_kv.child("external");
  if (!ek) throw InvalidScene(scene.path + ": external scenes need an external { ... } block");
  std::string family = ek->str("family");
  SurfacePatch sp;
  sp.space = scene.space;
  sp.origin = PatchOrigin::External;
  sp.declared_r = scene.r;
  sp.declared_eps_p = scene.eps_p;
  if (family == "e3_graph") {
    if (!(scene.space == SpaceForm{0, 0}))
      throw InvalidScene(scene.path + ": e3_graph lives in e3");
    sp.domain = {scene.u_domain.value_or(Interval{-1.0, 1.0}),
                 scene.v_domain.value_or(Interval{-1.0, 1.0})};
    sp.label = "external graph x3 = x1^2 + x2^2";
    sp.kernel = make_patch_kernel([](auto u, auto v) {
      using S = std::decay_t<decltype(u)>;
      Vec4<S> x;
      x << u, v, u * u + v * v, S(0.0);
      return x;
    });
  } else if (family == "l3_saddle") {
    if (!(scene.space == SpaceForm{1, 0}))
      throw InvalidScene(scene.path + ": l3_saddle lives in l3");
    double k = ek->num("k", 1.0);
    sp.domain = {scene.u_domain.value_or(Interval{-0.3, 0.3}),
                 scene.v_domain.value_or(Interval{-0.3, 0.3})};
    sp.label = "external timelike graph x3 = k x1 x2";
    sp.kernel = make_patch_kernel([k](auto u, auto v) {
      using S = std::decay_t<decltype(u)>;
      Vec4<S> x;
      x << u, v, S(k) * u * v, S(0.0);
      return x;
    });
  } else {
    throw InvalidScene(scene.path + ": unknown external family '" + family + "'");
  }
  return sp;
}

ExampleFamily example_from_kv(const KV& scene_kv, const SceneSpec& scene) {
  const KV* ek = scene_kv.child("example");
  if (!ek) throw InvalidScene(scene.path + ": example scenes need an example { ... } block");
  std::string family = ek->str("family");
  ExampleFamily fam;
  fam.r = scene.r;
  fam.u_domain = scene.u_domain.value_or(Interval{-2.0, 2.0});
  if (family == "e3_tube") {
    fam.id = ExampleId::E3Tube;
  } else if (family == "l3_tube") {
    fam.id = ExampleId::L3Tube;
  } else if (family == "h3_parabolic") {
    fam.id = ExampleId::H3Parabolic;
  } else if (family == "h3_hyperbolic") {
    fam.id = ExampleId::H3Hyperbolic;
  } else {
    throw InvalidScene(scene.path + ": unknown example family '" + family + "'");
  }
  if (const KV* pk = ek->child("profile")) fam.h = profile_from_kv(*pk);
  if (const KV* ak = ek->child("a")) fam.a = profile_from_kv(*ak);
  if (const KV* bk = ek->child("b")) fam.b = profile_from_kv(*bk);
  if (fam.id == ExampleId::H3Parabolic) {
    if (!fam.a) fam.a = profile_const(0.0);
    if (!fam.b) fam.b = profile_const(0.0);
  } else if (!fam.h) {
    throw InvalidScene(scene.path + ": example family needs a profile block");
  }
  return fam;
}

}  // namespace

SurfacePatch build_scene(const SceneSpec& scene) {
  validate_scene(scene);
  SurfacePatch sp;
  if (scene.kind == "elliptic" || scene.kind == "hyperbolic") {
    FramedCurve fc = curve_from_kv(scene.raw, scene);
    sp = scene.kind == "elliptic"
             ? elliptic_tube(fc, scene.r, scene.eps_p, scene.eps_pp, scene.v_domain)
             : hyperbolic_tube(fc, scene.r, scene.eps_p, scene.eps_pp, scene.v_domain);
  } else if (scene.kind == "parabolic") {
    ParabolicData pd = parabolic_from_kv(scene.raw, scene);
    if (pd.eps_pp != scene.eps_pp || -pd.eps != scene.eps_p)
      throw InvalidScene(scene.path + ": parabolic family signs disagree with eps_p/eps_pp");
    sp = parabolic_tube(pd, scene.v_domain);
  } else if (scene.kind == "example") {
    sp = build_example(example_from_kv(scene.raw, scene), scene.v_domain);
  } else {
    sp = external_from_kv(scene.raw, scene);
  }
  if (!(sp.space == scene.space))
    throw InvalidScene(scene.path + ": generator builds a surface in " + sp.space.name() +
                       " but the scene requests " + scene.space.name());
  if (scene.u_domain) sp.domain.u = *scene.u_domain;
  if (scene.v_domain) sp.domain.v = *scene.v_domain;
  if (sp.label.empty()) sp.label = scene.name;
  return sp;
}

}  // namespace cpc
