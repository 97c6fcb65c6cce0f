#include "algcurve/gaussian_rational.hpp"

#include <sstream>

namespace algcurve {

std::string rational_str(const mpq_class& q) {
    std::ostringstream os;
    os << q.get_num().get_str();
    if (q.get_den() != 1) os << "/" << q.get_den().get_str();
    return os.str();
}

std::string GaussianRational::str() const {
    if (im_ == 0) return rational_str(re_);
    std::ostringstream os;
    if (re_ != 0) {
        os << rational_str(re_);
        os << (im_ > 0 ? "+" : "-");
        mpq_class a = abs(im_);
        if (a != 1) os << rational_str(a) << "*";
        os << "i";
    } else {
        if (im_ == 1) {
            os << "i";
        } else if (im_ == -1) {
            os << "-i";
        } else {
            os << rational_str(im_) << "*i";
        }
    }
    return os.str();
}

} // namespace algcurve
