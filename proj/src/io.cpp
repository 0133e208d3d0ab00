#include "bcall/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bcall {

namespace fs = std::filesystem;

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    return std::nullopt;
}

CsvTable parse_csv(std::string_view text, const std::string& origin) {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1, record_line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        bool blank = record.size() == 1 && record[0].empty();
        if (!blank) {
            if (table.header.empty()) {
                table.header = std::move(record);
            } else {
                if (record.size() != table.header.size())
                    throw DataError(origin + ":" + std::to_string(record_line) + ": expected " +
                                    std::to_string(table.header.size()) + " fields, got " +
                                    std::to_string(record.size()));
                table.rows.push_back(std::move(record));
                table.line_numbers.push_back(record_line);
            }
        }
        record.clear();
        record_line = line;
    };

    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // swallowed; \r\n handled by the \n branch
        } else if (c == '\n') {
            ++line;
            end_record();
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw DataError(origin + ": unterminated quoted field");
    if (field_started || !record.empty()) end_record();

    if (table.header.empty()) throw DataError(origin + ": missing header row");
    return table;
}

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path.filename().string());
}

std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::size_t require_column(const CsvTable& t, std::string_view name, const std::string& origin) {
    auto col = t.column(name);
    if (!col) throw DataError(origin + ": missing required column '" + std::string(name) + "'");
    return *col;
}

struct MatrixBuilder {
    std::vector<Legislator> legislators;
    std::unordered_map<std::string, std::size_t> leg_index;
    std::vector<RollCall> rollcalls;
    std::unordered_map<std::string, std::size_t> rc_index;
    // (leg, rc) -> source row, for duplicate reporting
    std::unordered_map<std::string, std::size_t> seen;

    void add_cast(const std::string& origin, std::size_t line, const std::string& leg_id,
                  const std::string& name, const std::string& party, const std::string& rc_id,
                  const Date& date, Cast cast) {
        auto [lit, lnew] = leg_index.try_emplace(leg_id, legislators.size());
        if (lnew) {
            legislators.push_back(Legislator{leg_id, name, party, std::nullopt});
        } else {
            const Legislator& prev = legislators[lit->second];
            if (prev.name != name || prev.party != party)
                throw DataError(origin + ":" + std::to_string(line) + ": legislator '" + leg_id +
                                "' redefined with different name or party");
        }
        auto [rit, rnew] = rc_index.try_emplace(rc_id, rollcalls.size());
        if (rnew) {
            rollcalls.push_back(RollCall{rc_id, date, {}});
        } else if (!(rollcalls[rit->second].date == date)) {
            throw DataError(origin + ":" + std::to_string(line) + ": rollcall '" + rc_id +
                            "' redefined with a different date");
        }
        auto [sit, snew] = seen.try_emplace(leg_id + "\x1f" + rc_id, line);
        if (!snew)
            throw DataError(origin + ": duplicate cast for legislator '" + leg_id +
                            "' on rollcall '" + rc_id + "' (rows " + std::to_string(sit->second) +
                            " and " + std::to_string(line) + ")");
        rollcalls[rit->second].casts.emplace(leg_id, cast);
    }

    VoteMatrix build() { return VoteMatrix(std::move(legislators), std::move(rollcalls)); }
};

} // namespace

VoteMatrix read_canonical_csv(const fs::path& path) {
    const std::string origin = path.filename().string();
    CsvTable t = read_csv(path);
    std::size_t c_id = require_column(t, "legislator_id", origin);
    std::size_t c_name = require_column(t, "legislator_name", origin);
    std::size_t c_party = require_column(t, "party", origin);
    std::size_t c_rc = require_column(t, "rollcall_id", origin);
    std::size_t c_date = require_column(t, "date", origin);
    std::size_t c_cast = require_column(t, "cast", origin);

    MatrixBuilder b;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        std::size_t line = t.line_numbers[r];
        auto cast = parse_cast(row[c_cast]);
        if (!cast)
            throw DataError(origin + ":" + std::to_string(line) + ": unknown cast token '" +
                            row[c_cast] + "'");
        auto date = parse_date(row[c_date]);
        if (!date)
            throw DataError(origin + ":" + std::to_string(line) + ": unparseable date '" +
                            row[c_date] + "' for rollcall '" + row[c_rc] + "'");
        if (row[c_id].empty() || row[c_rc].empty())
            throw DataError(origin + ":" + std::to_string(line) +
                            ": empty legislator or rollcall id");
        b.add_cast(origin, line, row[c_id], row[c_name], row[c_party], row[c_rc], *date, *cast);
    }
    return b.build();
}

void write_canonical_csv(const VoteMatrix& m, const fs::path& path) {
    std::string out = "legislator_id,legislator_name,party,rollcall_id,date,cast\n";
    for (std::size_t j = 0; j < m.n_rollcalls(); ++j) {
        const RollCall& rc = m.rollcalls()[j];
        for (std::size_t i = 0; i < m.n_legislators(); ++i) {
            auto cast = m.cast_at(i, j);
            if (!cast) continue;
            const Legislator& leg = m.legislators()[i];
            out += csv_escape(leg.id);
            out += ',';
            out += csv_escape(leg.name);
            out += ',';
            out += csv_escape(leg.party);
            out += ',';
            out += csv_escape(rc.id);
            out += ',';
            out += to_string(rc.date);
            out += ',';
            out += to_string(*cast);
            out += '\n';
        }
    }
    write_file_atomic(path, out);
}

namespace {

Cast voteview_cast(long code, const std::string& origin, std::size_t line) {
    if (code >= 1 && code <= 3) return Cast::Yea;
    if (code >= 4 && code <= 6) return Cast::Nay;
    if (code == 7 || code == 8) return Cast::Abstain;
    if (code == 0 || code == 9) return Cast::Absent;
    throw DataError(origin + ":" + std::to_string(line) + ": unknown cast code '" +
                    std::to_string(code) + "'");
}

long parse_long(const std::string& s, const std::string& origin, std::size_t line,
                const char* what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError(origin + ":" + std::to_string(line) + ": bad " + what + " '" + s + "'");
    }
}

// rollcall key: explicit rollcall_id column, else congress_chamber_rollnumber
std::string voteview_rc_key(const CsvTable& t, const std::vector<std::string>& row,
                            const std::string& origin) {
    if (auto c = t.column("rollcall_id")) return row[*c];
    auto congress = t.column("congress");
    auto chamber = t.column("chamber");
    auto rollnumber = t.column("rollnumber");
    if (!congress || !chamber || !rollnumber)
        throw DataError(origin + ": need either a rollcall_id column or congress/chamber/rollnumber");
    return row[*congress] + "_" + row[*chamber] + "_" + row[*rollnumber];
}

} // namespace

VoteMatrix read_voteview(const fs::path& votes, const std::optional<fs::path>& members,
                         const std::optional<fs::path>& rollcalls) {
    struct Member {
        std::string name, party;
    };
    std::unordered_map<std::string, Member> member_of;
    if (members) {
        const std::string origin = members->filename().string();
        CsvTable t = read_csv(*members);
        std::size_t c_icpsr = require_column(t, "icpsr", origin);
        auto c_name = t.column("bioname");
        auto c_party = t.column("party_code");
        for (const auto& row : t.rows) {
            Member mb;
            if (c_name) mb.name = row[*c_name];
            if (c_party) mb.party = row[*c_party];
            member_of[row[c_icpsr]] = mb; // later congresses win; metadata only
        }
    }

    std::unordered_map<std::string, Date> date_of;
    if (rollcalls) {
        const std::string origin = rollcalls->filename().string();
        CsvTable t = read_csv(*rollcalls);
        std::size_t c_date = require_column(t, "date", origin);
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            auto date = parse_date(t.rows[r][c_date]);
            if (!date)
                throw DataError(origin + ":" + std::to_string(t.line_numbers[r]) +
                                ": unparseable date '" + t.rows[r][c_date] + "'");
            date_of[voteview_rc_key(t, t.rows[r], origin)] = *date;
        }
    }

    const std::string origin = votes.filename().string();
    CsvTable t = read_csv(votes);
    std::size_t c_icpsr = require_column(t, "icpsr", origin);
    std::size_t c_code = require_column(t, "cast_code", origin);

    MatrixBuilder b;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        std::size_t line = t.line_numbers[r];
        std::string rc_id = voteview_rc_key(t, row, origin);
        Cast cast = voteview_cast(parse_long(row[c_code], origin, line, "cast_code"), origin, line);
        Date date{};
        if (auto it = date_of.find(rc_id); it != date_of.end()) {
            date = it->second;
        } else if (rollcalls) {
            throw DataError(origin + ":" + std::to_string(line) + ": rollcall '" + rc_id +
                            "' has no date in '" + rollcalls->filename().string() + "'");
        } else {
            throw DataError(origin + ": a rollcalls file with dates is required");
        }
        std::string id = row[c_icpsr];
        std::string name = id, party;
        if (auto it = member_of.find(id); it != member_of.end()) {
            if (!it->second.name.empty()) name = it->second.name;
            party = it->second.party;
        }
        b.add_cast(origin, line, id, name, party, rc_id, date, cast);
    }
    return b.build();
}

GroupMap read_group_labels(const fs::path& path) {
    const std::string origin = path.filename().string();
    CsvTable t = read_csv(path);
    std::size_t c_id = require_column(t, "legislator_id", origin);
    std::size_t c_cluster = require_column(t, "cluster", origin);
    GroupMap out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        auto g = parse_group(t.rows[r][c_cluster]);
        if (!g)
            throw DataError(origin + ":" + std::to_string(t.line_numbers[r]) +
                            ": cluster must be 'left' or 'right', got '" + t.rows[r][c_cluster] +
                            "'");
        if (!out.emplace(t.rows[r][c_id], *g).second)
            throw DataError(origin + ":" + std::to_string(t.line_numbers[r]) +
                            ": duplicate label for legislator '" + t.rows[r][c_id] + "'");
    }
    return out;
}

void write_group_labels(const VoteMatrix& m, const GroupMap& groups, const fs::path& path) {
    std::string out = "legislator_id,cluster\n";
    for (const auto& leg : m.legislators()) {
        auto it = groups.find(leg.id);
        if (it == groups.end()) continue;
        out += csv_escape(leg.id);
        out += ',';
        out += to_string(it->second);
        out += '\n';
    }
    write_file_atomic(path, out);
}

std::unordered_map<std::string, Group> read_party_map(const fs::path& path) {
    const std::string origin = path.filename().string();
    CsvTable t = read_csv(path);
    std::size_t c_party = require_column(t, "party", origin);
    std::size_t c_cluster = require_column(t, "cluster", origin);
    std::unordered_map<std::string, Group> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        auto g = parse_group(t.rows[r][c_cluster]);
        if (!g)
            throw DataError(origin + ":" + std::to_string(t.line_numbers[r]) +
                            ": cluster must be 'left' or 'right', got '" + t.rows[r][c_cluster] +
                            "'");
        if (!out.emplace(t.rows[r][c_party], *g).second)
            throw DataError(origin + ":" + std::to_string(t.line_numbers[r]) +
                            ": duplicate entry for party '" + t.rows[r][c_party] + "'");
    }
    return out;
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string format_real(const std::optional<double>& v) { return v ? format_real(*v) : "NA"; }

void write_scores_csv(const std::vector<ScoreRow>& rows, const fs::path& path) {
    std::string out = "legislator_id,legislator_name,party,period,n_votes,d1,d2,group\n";
    for (const auto& r : rows) {
        out += csv_escape(r.legislator_id);
        out += ',';
        out += csv_escape(r.name);
        out += ',';
        out += csv_escape(r.party);
        out += ',';
        out += csv_escape(r.period);
        out += ',';
        out += std::to_string(r.n_votes);
        out += ',';
        out += format_real(r.d1);
        out += ',';
        out += format_real(r.d2);
        out += ',';
        out += to_string(r.group);
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_plot_csv(const std::vector<ScoreRow>& rows, const fs::path& path) {
    std::string out = "legislator_id,d1,d2,group,period\n";
    for (const auto& r : rows) {
        out += csv_escape(r.legislator_id);
        out += ',';
        out += format_real(r.d1);
        out += ',';
        out += format_real(r.d2);
        out += ',';
        out += to_string(r.group);
        out += ',';
        out += csv_escape(r.period);
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_indices_csv(const std::vector<GroupIndexSeries>& series, const fs::path& path) {
    std::string out = "group,period,n_rollcalls,rice,unity\n";
    for (const auto& s : series) {
        out += csv_escape(s.group);
        out += ',';
        out += csv_escape(s.period);
        out += ',';
        out += std::to_string(s.n_rollcalls);
        out += ',';
        out += format_real(s.rice);
        out += ',';
        out += format_real(s.unity);
        out += '\n';
    }
    write_file_atomic(path, out);
}

std::vector<ExternalScore> read_score_file(const fs::path& path,
                                           const std::optional<std::string>& column) {
    const std::string origin = path.filename().string();
    CsvTable t = read_csv(path);
    std::size_t c_id = require_column(t, "legislator_id", origin);
    std::size_t c_period = require_column(t, "period", origin);
    std::size_t c_score;
    if (column) {
        c_score = require_column(t, *column, origin);
    } else if (auto c = t.column("score")) {
        c_score = *c;
    } else if (auto c1 = t.column("d1")) {
        c_score = *c1;
    } else {
        throw DataError(origin + ": no 'score' or 'd1' column (use an explicit column name)");
    }

    std::vector<ExternalScore> out;
    out.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        ExternalScore s;
        s.legislator_id = t.rows[r][c_id];
        s.period = t.rows[r][c_period];
        try {
            std::size_t used = 0;
            s.score = std::stod(t.rows[r][c_score], &used);
            if (used != t.rows[r][c_score].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw DataError(origin + ":" + std::to_string(t.line_numbers[r]) +
                            ": bad score value '" + t.rows[r][c_score] + "'");
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_comparison_csv(const std::vector<PeriodComparison>& rows, const fs::path& path) {
    std::string out = "period,n,pearson_r,pearson_se,spearman_rho,spearman_se\n";
    for (const auto& row : rows) {
        out += csv_escape(row.period);
        out += ',';
        out += std::to_string(row.report.n);
        out += ',';
        out += format_real(row.report.pearson_r);
        out += ',';
        out += format_real(row.report.pearson_se);
        out += ',';
        out += format_real(row.report.spearman_rho);
        out += ',';
        out += format_real(row.report.spearman_se);
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_cohesion_report_csv(const CohesionComparison& cmp, const fs::path& path) {
    std::string out = "metric,r,se,rho,rho_se,n\n";
    auto line = [&](const char* metric, const CorrelationReport& rep) {
        out += metric;
        out += ',';
        out += format_real(rep.pearson_r);
        out += ',';
        out += format_real(rep.pearson_se);
        out += ',';
        out += format_real(rep.spearman_rho);
        out += ',';
        out += format_real(rep.spearman_se);
        out += ',';
        out += std::to_string(rep.n);
        out += '\n';
    };
    line("rice", cmp.vs_rice);
    line("unity", cmp.vs_unity);
    write_file_atomic(path, out);
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path dir = path.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DataError("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

} // namespace bcall
