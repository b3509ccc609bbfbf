#include "cffqnn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cffqnn/rng.hpp"
#include "cffqnn/textio.hpp"

namespace cffqnn {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        // Strip surrounding quotes and whitespace; quoted headers are common.
        while (!field.empty() && (field.front() == ' ' || field.front() == '"' ||
                                  field.front() == '\r')) {
            field.erase(field.begin());
        }
        while (!field.empty() && (field.back() == ' ' || field.back() == '"' ||
                                  field.back() == '\r')) {
            field.pop_back();
        }
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

Dataset take_rows(const Dataset& data, const std::vector<std::size_t>& indices) {
    Dataset out;
    out.column_names = data.column_names;
    out.features = Matrix(indices.size(), data.cols());
    out.labels.resize(indices.size());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto src = data.features.row(indices[r]);
        std::copy(src.begin(), src.end(), out.features.row(r).begin());
        out.labels[r] = data.labels[indices[r]];
    }
    return out;
}

}  // namespace

Dataset ingest_csv(const std::filesystem::path& path, const std::string& label_column,
                   const std::string& positive_label, IngestReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path.string());
    const std::vector<std::string> header = split_csv_line(line);
    std::size_t label_index = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == label_column) {
            label_index = i;
            break;
        }
    }
    if (label_index == header.size()) {
        throw std::runtime_error("label column '" + label_column + "' not found in " +
                                 path.string());
    }

    Dataset data;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i != label_index) data.column_names.push_back(header[i]);
    }

    std::vector<double> values;
    std::size_t skipped = 0;
    std::vector<double> row(header.size() - 1);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            ++skipped;
            continue;
        }
        bool ok = true;
        std::size_t c = 0;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == label_index) continue;
            double v = 0.0;
            try {
                v = parse_double(fields[i]);
            } catch (const std::invalid_argument&) {
                ok = false;
                break;
            }
            if (!std::isfinite(v)) {
                ok = false;
                break;
            }
            row[c++] = v;
        }
        if (!ok) {
            ++skipped;
            continue;
        }
        values.insert(values.end(), row.begin(), row.end());
        data.labels.push_back(fields[label_index] == positive_label ? 1 : 0);
    }

    if (data.labels.empty()) {
        throw std::runtime_error("no usable rows in " + path.string());
    }
    data.features = Matrix(data.labels.size(), header.size() - 1);
    data.features.data() = std::move(values);
    if (report) {
        report->rows_kept = data.labels.size();
        report->rows_skipped = skipped;
    }
    return data;
}

Dataset balance(const Dataset& data, std::uint64_t seed) {
    std::vector<std::size_t> positives, negatives;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        (data.labels[r] ? positives : negatives).push_back(r);
    }
    if (positives.empty() || negatives.empty()) {
        throw std::invalid_argument("balance requires both classes present");
    }
    auto& majority = positives.size() > negatives.size() ? positives : negatives;
    const std::size_t minority_count = std::min(positives.size(), negatives.size());

    Rng rng(seed);
    rng.shuffle(majority);
    majority.resize(minority_count);

    std::vector<std::size_t> keep;
    keep.reserve(2 * minority_count);
    keep.insert(keep.end(), negatives.begin(), negatives.end());
    keep.insert(keep.end(), positives.begin(), positives.end());
    std::sort(keep.begin(), keep.end());
    return take_rows(data, keep);
}

std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction,
                                  std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("train fraction must be in (0, 1)");
    }
    std::vector<std::size_t> class_rows[2];
    for (std::size_t r = 0; r < data.rows(); ++r) {
        class_rows[data.labels[r] ? 1 : 0].push_back(r);
    }
    for (const auto& rows : class_rows) {
        if (rows.size() < 2) {
            throw std::invalid_argument("each class needs at least 2 rows to split");
        }
    }

    // Train total is floor(rows * fraction); per-class seats go out by
    // largest remainder so stratification holds while the totals match the
    // published table sizes.
    const auto train_total = static_cast<std::size_t>(
        std::floor(static_cast<double>(data.rows()) * train_fraction));
    std::size_t base[2];
    double remainder[2];
    for (int c = 0; c < 2; ++c) {
        const double quota = static_cast<double>(class_rows[c].size()) * train_fraction;
        base[c] = static_cast<std::size_t>(std::floor(quota));
        remainder[c] = quota - static_cast<double>(base[c]);
    }
    std::size_t leftover = train_total - std::min(train_total, base[0] + base[1]);
    while (leftover-- > 0) {
        const int c = remainder[1] > remainder[0] ? 1 : 0;
        ++base[c];
        remainder[c] = -1.0;
    }

    Rng rng(seed);
    std::vector<std::size_t> train_idx, test_idx;
    for (int c = 0; c < 2; ++c) {
        auto rows = class_rows[c];
        rng.shuffle(rows);
        const std::size_t take = std::min(base[c], rows.size() - 1);
        train_idx.insert(train_idx.end(), rows.begin(), rows.begin() + take);
        test_idx.insert(test_idx.end(), rows.begin() + take, rows.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    return {take_rows(data, train_idx), take_rows(data, test_idx)};
}

EigenResult jacobi_eigen_symmetric(const Matrix& matrix, double off_diag_tolerance,
                                   int max_sweeps) {
    const std::size_t n = matrix.rows();
    if (n == 0 || matrix.cols() != n) {
        throw std::invalid_argument("jacobi needs a square matrix");
    }
    Matrix a = matrix;
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    auto off_diag_norm = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
        }
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_diag_norm() > off_diag_tolerance;
         ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenResult result;
    result.values.resize(n);
    result.vectors = Matrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        result.values[r] = a(order[r], order[r]);
        for (std::size_t k = 0; k < n; ++k) result.vectors(r, k) = v(k, order[r]);
    }
    return result;
}

PcaTransform pca_fit(const Matrix& train_features, int k) {
    const std::size_t rows = train_features.rows();
    const std::size_t dim = train_features.cols();
    if (rows < 2) throw std::invalid_argument("pca needs at least 2 rows");
    if (k < 1 || static_cast<std::size_t>(k) > dim) {
        throw std::invalid_argument("pca component count out of range");
    }

    PcaTransform transform;
    transform.mean.assign(dim, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto row = train_features.row(r);
        for (std::size_t c = 0; c < dim; ++c) transform.mean[c] += row[c];
    }
    for (double& m : transform.mean) m /= static_cast<double>(rows);

    Matrix cov(dim, dim);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto row = train_features.row(r);
        for (std::size_t i = 0; i < dim; ++i) {
            const double di = row[i] - transform.mean[i];
            for (std::size_t j = i; j < dim; ++j) {
                cov(i, j) += di * (row[j] - transform.mean[j]);
            }
        }
    }
    const double inv = 1.0 / static_cast<double>(rows - 1);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            cov(i, j) *= inv;
            cov(j, i) = cov(i, j);
        }
    }

    const EigenResult eig = jacobi_eigen_symmetric(cov);
    transform.components = Matrix(k, dim);
    transform.explained_variance.resize(k);
    for (int r = 0; r < k; ++r) {
        transform.explained_variance[r] = eig.values[r];
        auto dst = transform.components.row(r);
        const auto src = eig.vectors.row(r);
        std::copy(src.begin(), src.end(), dst.begin());
        // Deterministic sign: largest-magnitude entry positive.
        std::size_t arg_max = 0;
        for (std::size_t c = 1; c < dim; ++c) {
            if (std::abs(dst[c]) > std::abs(dst[arg_max])) arg_max = c;
        }
        if (dst[arg_max] < 0.0) {
            for (double& x : dst) x = -x;
        }
    }
    return transform;
}

Matrix pca_apply(const PcaTransform& transform, const Matrix& features) {
    const std::size_t dim = transform.mean.size();
    if (features.cols() != dim) {
        throw std::invalid_argument("pca transform expects " + std::to_string(dim) +
                                    " columns");
    }
    const std::size_t k = transform.components.rows();
    Matrix out(features.rows(), k);
    for (std::size_t r = 0; r < features.rows(); ++r) {
        const auto row = features.row(r);
        for (std::size_t c = 0; c < k; ++c) {
            const auto comp = transform.components.row(c);
            double dot = 0.0;
            for (std::size_t i = 0; i < dim; ++i) dot += (row[i] - transform.mean[i]) * comp[i];
            out(r, c) = dot;
        }
    }
    return out;
}

ScaleTransform scale_fit(const Matrix& train_features) {
    if (train_features.rows() == 0) throw std::invalid_argument("empty train set");
    ScaleTransform transform;
    transform.min.assign(train_features.cols(), 0.0);
    transform.max.assign(train_features.cols(), 0.0);
    for (std::size_t c = 0; c < train_features.cols(); ++c) {
        double lo = train_features(0, c);
        double hi = lo;
        for (std::size_t r = 1; r < train_features.rows(); ++r) {
            lo = std::min(lo, train_features(r, c));
            hi = std::max(hi, train_features(r, c));
        }
        transform.min[c] = lo;
        transform.max[c] = hi;
    }
    return transform;
}

Matrix scale_apply(const ScaleTransform& transform, const Matrix& features) {
    if (features.cols() != transform.min.size()) {
        throw std::invalid_argument("scale transform column mismatch");
    }
    constexpr double pi = std::numbers::pi;
    Matrix out(features.rows(), features.cols());
    for (std::size_t c = 0; c < features.cols(); ++c) {
        const double lo = transform.min[c];
        const double span = transform.max[c] - lo;
        for (std::size_t r = 0; r < features.rows(); ++r) {
            if (span == 0.0) {
                out(r, c) = pi / 2.0;
            } else {
                out(r, c) = std::clamp((features(r, c) - lo) / span, 0.0, 1.0) * pi;
            }
        }
    }
    return out;
}

ScaledSplit scale_fit_apply(const Matrix& train_features, const Matrix& other_features) {
    ScaledSplit result;
    result.transform = scale_fit(train_features);
    result.train = scale_apply(result.transform, train_features);
    result.other = scale_apply(result.transform, other_features);
    return result;
}

std::uint64_t transform_digest(const PcaTransform& pca, const ScaleTransform& scale,
                               std::uint64_t seed) {
    std::uint64_t h = fnv1a_doubles(pca.mean);
    h = fnv1a_doubles(pca.components.data(), h);
    h = fnv1a_doubles(pca.explained_variance, h);
    h = fnv1a_doubles(scale.min, h);
    h = fnv1a_doubles(scale.max, h);
    const double seed_d = static_cast<double>(seed);
    h = fnv1a_doubles(std::span<const double>{&seed_d, 1}, h);
    return h;
}

void write_prepared(const std::filesystem::path& path, const PreparedData& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "prepared k " << data.k << " rows " << data.features.rows() << " seed "
        << data.seed << " digest " << hex64(data.digest) << "\n";
    for (std::size_t r = 0; r < data.features.rows(); ++r) {
        const auto row = data.features.row(r);
        for (double v : row) out << format_double(v) << ' ';
        out << data.labels[r] << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

PreparedData read_prepared(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string tag, k_key, rows_key, seed_key, digest_key, digest_hex;
    PreparedData data;
    std::size_t rows = 0;
    in >> tag >> k_key >> data.k >> rows_key >> rows >> seed_key >> data.seed >>
        digest_key >> digest_hex;
    if (!in || tag != "prepared" || k_key != "k" || rows_key != "rows" ||
        seed_key != "seed" || digest_key != "digest") {
        throw std::runtime_error("malformed prepared file header: " + path.string());
    }
    data.digest = std::stoull(digest_hex, nullptr, 16);
    data.features = Matrix(rows, static_cast<std::size_t>(data.k));
    data.labels.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = data.features.row(r);
        for (double& v : row) {
            std::string token;
            if (!(in >> token)) {
                throw std::runtime_error("prepared file truncated: " + path.string());
            }
            v = parse_double(token);
        }
        if (!(in >> data.labels[r])) {
            throw std::runtime_error("prepared file truncated: " + path.string());
        }
    }
    return data;
}

Dataset to_dataset(const PreparedData& data) {
    Dataset out;
    out.features = data.features;
    out.labels = data.labels;
    for (int c = 0; c < data.k; ++c) out.column_names.push_back("pc" + std::to_string(c));
    return out;
}

}  // namespace cffqnn
