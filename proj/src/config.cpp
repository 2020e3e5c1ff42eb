#include "kreinkit/config.hpp"

#include <fstream>

#include "json.hpp"

namespace kreinkit {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
    fail(ErrorCode::ConfigInvalid, what);
}

double as_number(const json& j, const char* what) {
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    return j.get<double>();
}

Complex parse_complex(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        bad(std::string(what) + " must be a [re, im] pair");
    return Complex(as_number(j[0], what), as_number(j[1], what));
}

Vector parse_cvector(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        bad(std::string(what) + " must be a nonempty array of [re, im] pairs");
    Vector v(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        v(static_cast<int>(k)) = parse_complex(j[k], what);
    return v;
}

Matrix parse_cmatrix(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        bad(std::string(what) + " must be a nonempty array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    Matrix m;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].empty())
            bad(std::string(what) + " rows must be nonempty arrays");
        if (r == 0) {
            cols = j[r].size();
            m.resize(rows, cols);
        } else if (j[r].size() != cols) {
            bad(std::string(what) + " rows have inconsistent lengths");
        }
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<int>(r), static_cast<int>(c)) =
                parse_complex(j[r][c], what);
    }
    return m;
}

Vec3 parse_vec3(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        bad(std::string(what) + " must be an [x, y, z] triple");
    return Vec3(as_number(j[0], what), as_number(j[1], what), as_number(j[2], what));
}

OperatorModel parse_model(const json& j) {
    if (!j.is_object()) bad("\"model\" must be an object");
    if (!j.contains("type") || !j["type"].is_string())
        bad("\"model.type\" must be \"diagonal\" or \"point3d\"");
    const std::string type = j["type"].get<std::string>();
    if (type == "diagonal") {
        if (!j.contains("eigenvalues") || !j["eigenvalues"].is_array() ||
            j["eigenvalues"].empty())
            bad("diagonal model needs a nonempty \"eigenvalues\" array");
        RealVector a(j["eigenvalues"].size());
        for (std::size_t k = 0; k < j["eigenvalues"].size(); ++k)
            a(static_cast<int>(k)) = as_number(j["eigenvalues"][k], "eigenvalues");
        if (!j.contains("trace_vectors"))
            bad("diagonal model needs \"trace_vectors\"");
        const Matrix v = parse_cmatrix(j["trace_vectors"], "trace_vectors");
        return DiagonalModel(std::move(a), v);
    }
    if (type == "point3d") {
        if (!j.contains("centers") || !j["centers"].is_array() || j["centers"].empty())
            bad("point3d model needs a nonempty \"centers\" array");
        std::vector<Vec3> centers;
        centers.reserve(j["centers"].size());
        for (const auto& c : j["centers"]) centers.push_back(parse_vec3(c, "centers"));
        return PointModel3D(std::move(centers));
    }
    bad("unknown model type \"" + type + "\"");
}

ThetaParam parse_theta(const json& j, const OperatorModel& model) {
    if (j.is_object()) {
        if (!j.contains("aghh_alpha"))
            bad("\"theta\" object form supports only {\"aghh_alpha\": <number>}");
        const double alpha = as_number(j["aghh_alpha"], "theta.aghh_alpha");
        const auto* pm = std::get_if<PointModel3D>(&model);
        if (pm == nullptr)
            bad("\"theta.aghh_alpha\" is only defined for point3d models");
        return ThetaParam(aghh_theta(*pm, alpha));
    }
    return ThetaParam(parse_cmatrix(j, "theta"));
}

KernelField parse_field(const json& j) {
    if (!j.is_object() || !j.contains("kernels") || !j["kernels"].is_array() ||
        j["kernels"].empty())
        bad("point-model \"state\" must be {\"kernels\": [ ... ]}");
    std::vector<KernelTerm> terms;
    for (const auto& t : j["kernels"]) {
        if (!t.is_object() || !t.contains("center") || !t.contains("z") ||
            !t.contains("amplitude"))
            bad("each kernel needs \"center\", \"z\" and \"amplitude\"");
        terms.push_back(KernelTerm{parse_vec3(t["center"], "kernel center"),
                                   parse_complex(t["z"], "kernel z"),
                                   parse_complex(t["amplitude"], "kernel amplitude")});
    }
    return KernelField(std::move(terms));
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) bad("cannot open config file: " + path);

    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) bad("config root must be a JSON object");

    try {
        if (!j.contains("model")) bad("config needs a \"model\" section");
        OperatorModel model = parse_model(j["model"]);

        if (!j.contains("theta")) bad("config needs a \"theta\" section");
        ThetaParam theta = parse_theta(j["theta"], model);
        if (theta.dim() != dim_h(model))
            bad("theta is " + std::to_string(theta.dim()) +
                "-dimensional but the model boundary space has dimension " +
                std::to_string(dim_h(model)));

        ReferencePoint ref;
        if (j.contains("z0")) {
            const Complex z0 = parse_complex(j["z0"], "z0");
            ref = is_real(z0) ? ReferencePoint::real_axis(z0.real())
                              : ReferencePoint(z0);
        }

        RunConfig cfg{std::move(model), std::move(theta), ref,
                      {}, {}, {}, {}, {}, {}, {}, {}};

        if (j.contains("tol")) {
            const double t = as_number(j["tol"], "tol");
            if (!(t > 0.0)) bad("\"tol\" must be positive");
            cfg.tol = t;
        }
        if (j.contains("interval")) {
            const auto& iv = j["interval"];
            if (!iv.is_array() || iv.size() != 2)
                bad("\"interval\" must be [lo, hi]");
            cfg.interval = {as_number(iv[0], "interval"), as_number(iv[1], "interval")};
        }
        if (j.contains("grid")) {
            if (!j["grid"].is_number_integer() || j["grid"].get<int>() < 2)
                bad("\"grid\" must be an integer >= 2");
            cfg.grid = j["grid"].get<int>();
        }
        if (j.contains("z")) cfg.z = parse_complex(j["z"], "z");
        if (j.contains("state")) {
            if (is_diagonal(cfg.model))
                cfg.state = parse_cvector(j["state"], "state");
            else
                cfg.field = parse_field(j["state"]);
        }
        if (j.contains("points")) {
            if (!j["points"].is_array() || j["points"].empty())
                bad("\"points\" must be a nonempty array of [x, y, z] triples");
            for (const auto& p : j["points"])
                cfg.points.push_back(parse_vec3(p, "points"));
        }
        if (j.contains("w")) cfg.w = parse_cmatrix(j["w"], "w");
        return cfg;
    } catch (const Error&) {
        throw;
    } catch (const json::exception& e) {
        bad(std::string("malformed config: ") + e.what());
    } catch (const std::exception& e) {
        bad(std::string("malformed config: ") + e.what());
    }
}

}  // namespace kreinkit
