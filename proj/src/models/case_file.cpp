#include <fstream>
#include <sstream>

#include "pcdae/errors.hpp"
#include "pcdae/models/power_network.hpp"

namespace pcdae {

namespace {

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
    throw MalformedCase(source + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Reads exactly `count` whitespace-separated fields.
std::vector<std::string> fields(const std::string& line, std::size_t count,
                                const std::string& source, int lineno, const char* section) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) {
        out.push_back(tok);
    }
    if (out.size() != count) {
        fail(source, lineno,
             std::string("[") + section + "] expects " + std::to_string(count) + " fields, got " +
                 std::to_string(out.size()));
    }
    return out;
}

double number(const std::string& s, const std::string& source, int lineno) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    fail(source, lineno, "'" + s + "' is not a number");
}

int integer(const std::string& s, const std::string& source, int lineno) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    fail(source, lineno, "'" + s + "' is not an integer");
}

}  // namespace

NetworkCase parse_case(std::istream& in, const std::string& source) {
    NetworkCase c;
    std::string section;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail(source, lineno, "unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "bus" && section != "branch" && section != "machine" &&
                section != "load") {
                fail(source, lineno, "unknown section [" + section + "]");
            }
            continue;
        }
        if (section == "bus") {
            // id type v_spec angle_deg
            const auto f = fields(line, 4, source, lineno, "bus");
            Bus b;
            b.id = integer(f[0], source, lineno);
            if (f[1] == "slack") {
                b.type = BusType::Slack;
            } else if (f[1] == "pv") {
                b.type = BusType::PV;
            } else if (f[1] == "pq") {
                b.type = BusType::PQ;
            } else {
                fail(source, lineno, "bus type must be slack, pv or pq");
            }
            b.v_spec = number(f[2], source, lineno);
            b.angle_deg = number(f[3], source, lineno);
            c.buses.push_back(b);
        } else if (section == "branch") {
            // from to r x b
            const auto f = fields(line, 5, source, lineno, "branch");
            c.branches.push_back({integer(f[0], source, lineno), integer(f[1], source, lineno),
                                  number(f[2], source, lineno), number(f[3], source, lineno),
                                  number(f[4], source, lineno), true});
        } else if (section == "machine") {
            // bus H D xd_prime p_gen
            const auto f = fields(line, 5, source, lineno, "machine");
            c.machines.push_back({integer(f[0], source, lineno), number(f[1], source, lineno),
                                  number(f[2], source, lineno), number(f[3], source, lineno),
                                  number(f[4], source, lineno)});
        } else if (section == "load") {
            // bus p q
            const auto f = fields(line, 3, source, lineno, "load");
            c.loads.push_back({integer(f[0], source, lineno), number(f[1], source, lineno),
                               number(f[2], source, lineno)});
        } else {
            fail(source, lineno, "data before the first section header");
        }
    }
    try {
        c.validate();
    } catch (const MalformedCase& e) {
        throw MalformedCase(source + ": " + e.what());
    }
    return c;
}

NetworkCase load_case_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open case file '" + path + "'");
    }
    return parse_case(in, path);
}

}  // namespace pcdae
