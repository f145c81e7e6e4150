#include "maxeig/models.hpp"

#include <cmath>
#include <cstdlib>

#include "json.hpp"
#include "maxeig/errors.hpp"

namespace maxeig {

using nlohmann::json;

std::string_view to_string(ModelName name) {
  switch (name) {
    case ModelName::bd_squares: return "bd_squares";
    case ModelName::poisson_block: return "poisson_block";
    case ModelName::toeplitz: return "toeplitz";
    case ModelName::triangular: return "triangular";
    case ModelName::branching: return "branching";
    case ModelName::negative3: return "negative3";
    case ModelName::complex3: return "complex3";
  }
  return "unknown";
}

ModelName parse_model_name(std::string_view text) {
  for (auto name : {ModelName::bd_squares, ModelName::poisson_block, ModelName::toeplitz, ModelName::triangular,
                    ModelName::branching, ModelName::negative3, ModelName::complex3}) {
    if (to_string(name) == text) return name;
  }
  throw ParseError("unknown model '" + std::string(text) + "'", 0);
}

std::string_view to_string(RateRule rule) {
  switch (rule) {
    case RateRule::inv_kp1: return "inv_kp1";
    case RateRule::one: return "one";
    case RateRule::k: return "k";
    case RateRule::k2: return "k2";
  }
  return "unknown";
}

RateRule parse_rate_rule(std::string_view text) {
  for (auto rule : {RateRule::inv_kp1, RateRule::one, RateRule::k, RateRule::k2}) {
    if (to_string(rule) == text) return rule;
  }
  throw ParseError("unknown rate rule '" + std::string(text) + "'", 0);
}

std::string model_spec_to_json(const ModelSpec& spec) {
  json params = json::object();
  switch (spec.name) {
    case ModelName::triangular: params["rule"] = to_string(spec.rule); break;
    case ModelName::branching: params["alpha"] = spec.alpha; break;
    case ModelName::poisson_block:
      params["block_size"] = spec.block_size;
      params["stencil"] = {{"diagonal", spec.stencil.diagonal}, {"off_diagonal", spec.stencil.off_diagonal}};
      break;
    default: break;
  }
  json doc = {{"name", to_string(spec.name)}, {"size", spec.size}, {"params", params}};
  return doc.dump();
}

ModelSpec model_spec_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    ModelSpec spec;
    spec.name = parse_model_name(doc.at("name").get<std::string>());
    spec.size = doc.value("size", 0);
    const json params = doc.value("params", json::object());
    if (params.contains("rule")) spec.rule = parse_rate_rule(params.at("rule").get<std::string>());
    spec.alpha = params.value("alpha", spec.alpha);
    spec.block_size = params.value("block_size", spec.block_size);
    if (params.contains("stencil")) {
      const json& s = params.at("stencil");
      spec.stencil.diagonal = s.value("diagonal", spec.stencil.diagonal);
      spec.stencil.off_diagonal = s.value("off_diagonal", spec.stencil.off_diagonal);
    }
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model spec: ") + e.what(), 0);
  }
}

namespace {

void require_size(int n, int minimum, const char* model) {
  if (n < minimum) {
    throw InvalidInput(std::string(model) + ": size must be at least " + std::to_string(minimum));
  }
}

}  // namespace

AnyMatrix render(const ModelSpec& spec) {
  switch (spec.name) {
    case ModelName::bd_squares: return bd_squares(spec.size);
    case ModelName::poisson_block:
      return poisson_block(spec.size, spec.block_size == 0 ? spec.size : spec.block_size, spec.stencil);
    case ModelName::toeplitz: return toeplitz_linear(spec.size);
    case ModelName::triangular: return triangular_model(spec.size, spec.rule);
    case ModelName::branching: return branching_model(spec.size, spec.alpha);
    case ModelName::negative3: return negative3();
    case ModelName::complex3: return complex3();
  }
  throw InvalidInput("unknown model");
}

TridiagonalSystem bd_squares(int n) {
  require_size(n, 1, "bd_squares");
  std::vector<double> lower(n), upper(n), killing(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) lower[k - 1] = static_cast<double>(k) * k;
  for (int k = 0; k < n; ++k) upper[k] = static_cast<double>(k + 1) * (k + 1);
  killing[n] = static_cast<double>(n + 1) * (n + 1);
  return TridiagonalSystem(std::move(lower), std::move(upper), std::move(killing));
}

DenseMatrix<double> poisson_block(int blocks, int block_size, PoissonStencil stencil) {
  require_size(blocks, 2, "poisson_block");
  require_size(block_size, 1, "poisson_block");
  const std::size_t bs = static_cast<std::size_t>(block_size);
  const std::size_t order = static_cast<std::size_t>(blocks) * bs;
  DenseMatrix<double> m(order);
  for (std::size_t blk = 0; blk < static_cast<std::size_t>(blocks); ++blk) {
    for (std::size_t i = 0; i < bs; ++i) {
      const std::size_t r = blk * bs + i;
      m(r, r) = stencil.diagonal;
      if (i > 0) m(r, r - 1) = stencil.off_diagonal;
      if (i + 1 < bs) m(r, r + 1) = stencil.off_diagonal;
      if (blk > 0) m(r, r - bs) = 1.0;
      if (blk + 1 < static_cast<std::size_t>(blocks)) m(r, r + bs) = 1.0;
    }
  }
  return m;
}

DenseMatrix<double> toeplitz_linear(int n) {
  require_size(n, 2, "toeplitz");
  DenseMatrix<double> m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::abs(i - j) + 1.0;
  return m;
}

DenseMatrix<double> triangular_model(int n, RateRule rule) {
  require_size(n, 1, "triangular");
  const auto rate = [rule](int k) -> double {
    switch (rule) {
      case RateRule::inv_kp1: return 1.0 / (k + 1.0);
      case RateRule::one: return 1.0;
      case RateRule::k: return k;
      case RateRule::k2: return static_cast<double>(k) * k;
    }
    return 0.0;
  };
  DenseMatrix<double> m(n + 1);
  m(0, 0) = -1.0;
  m(0, 1) = 1.0;
  for (int i = 1; i <= n; ++i) {
    const double a = rate(i);
    m(i, 0) += a;
    m(i, i) = -a - (i + 1.0);
    if (i < n) m(i, i + 1) = i + 1.0;
  }
  return m;
}

DenseMatrix<double> branching_model(int n, double alpha) {
  require_size(n, 2, "branching");
  if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidInput("branching: alpha must lie in (0, 2)");
  const double p0 = alpha / 2.0;
  const auto p = [alpha](int k) { return std::ldexp(2.0 - alpha, -k); };
  // sum_{k>=m} p_k for m >= 2
  const auto tail = [alpha](int m) { return std::ldexp(2.0 - alpha, -(m - 1)); };

  DenseMatrix<double> m(n);
  for (int i = 1; i <= n; ++i) {
    const int r = i - 1;
    if (i > 1) m(r, r - 1) = i * p0;
    if (i < n) {
      m(r, r) = -i;
      for (int j = i + 1; j < n; ++j) m(r, j - 1) = i * p(j - i + 1);
      m(r, n - 1) = i * tail(n - i + 1);
    } else {
      m(r, r) = -n * p0;
    }
  }
  return m;
}

DenseMatrix<double> negative3() {
  return DenseMatrix<double>(3, {-1, 8, -1, 8, 8, 8, -1, 8, 8});
}

DenseMatrix<Complex> complex3() {
  return DenseMatrix<Complex>(3, {
                                     {0.75, -1.125},
                                     {0.5882, -0.1471},
                                     {1.0735, 1.4191},
                                     {-0.5, -1.0},
                                     {2.1765, 0.7059},
                                     {2.1471, -0.4118},
                                     {2.75, -0.125},
                                     {0.5882, -0.1471},
                                     {-0.9265, 0.4191},
                                 });
}

}  // namespace maxeig
