#pragma once

#include "jtwo/j2_model.hpp"

#include <string>

inline std::string data_path()
{
#ifdef JTWO_DATA_DIR
    return std::string(JTWO_DATA_DIR) + "/tmf3.dat";
#else
    return "data/tmf3.dat";
#endif
}

inline const jtwo::TmfTable& test_table(int max_degree = 360)
{
    static jtwo::TmfTable table = jtwo::load_tmf(max_degree, data_path());
    return table;
}

inline const jtwo::J2Model& test_j2(int max_degree = 260)
{
    static jtwo::J2Model model = [&] {
        jtwo::TmfData data = jtwo::parse_tmf_data(data_path());
        jtwo::SphereTable sphere = jtwo::sphere_from_data(data);
        return jtwo::assemble_j2(test_table(), sphere, max_degree);
    }();
    return model;
}
