#ifndef EQSIM_CSV_HPP
#define EQSIM_CSV_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace eqsim {

// Fixed numeric formatting (17 significant digits, '.' separator) so output
// files diff meaningfully across runs and platforms.
std::string format_number(double v);
std::string format_count(std::size_t v);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }

    // Writes via a temp file + rename so readers never see partial output.
    void save(const std::string& path) const;

private:
    std::size_t columns_;
    std::string text_;
};

void write_file_atomic(const std::string& path, const std::string& content);

} // namespace eqsim

#endif // EQSIM_CSV_HPP
