#pragma once

// Built-in desk-scale technology. The LEF text below is the single source
// of truth: the generator emits it, the bundled fixture mirrors it and the
// parser consumes it. Tracks run at pitch/2 + k*pitch; every pin port
// covers exactly one track crossing so any legal placement is routable.

#include <string>

namespace salsy {

inline const std::string& mock65_lef_text() {
  static const std::string text = R"(VERSION 5.8 ;
BUSBITCHARS "[]" ;
DIVIDERCHAR "/" ;
UNITS
  DATABASE MICRONS 1000 ;
END UNITS
SITE core
  CLASS CORE ;
  SIZE 0.2 BY 1.4 ;
END core
LAYER M1
  TYPE ROUTING ;
  DIRECTION HORIZONTAL ;
  PITCH 0.2 ;
  WIDTH 0.1 ;
  MINWIDTH 0.1 ;
  MAXWIDTH 0.8 ;
  SPACING 0.1 ;
  RESISTANCE 4.0 ;
  CAPACITANCE 0.20 ;
END M1
LAYER V12
  TYPE CUT ;
  SPACING 0.06 ;
END V12
LAYER M2
  TYPE ROUTING ;
  DIRECTION VERTICAL ;
  PITCH 0.2 ;
  WIDTH 0.1 ;
  MINWIDTH 0.1 ;
  MAXWIDTH 0.8 ;
  SPACING 0.1 ;
  RESISTANCE 3.0 ;
  CAPACITANCE 0.20 ;
END M2
LAYER V23
  TYPE CUT ;
  SPACING 0.06 ;
END V23
LAYER M3
  TYPE ROUTING ;
  DIRECTION HORIZONTAL ;
  PITCH 0.2 ;
  WIDTH 0.1 ;
  MINWIDTH 0.1 ;
  MAXWIDTH 0.8 ;
  SPACING 0.1 ;
  RESISTANCE 3.0 ;
  CAPACITANCE 0.19 ;
END M3
LAYER V34
  TYPE CUT ;
  SPACING 0.06 ;
END V34
LAYER M4
  TYPE ROUTING ;
  DIRECTION VERTICAL ;
  PITCH 0.2 ;
  WIDTH 0.1 ;
  MINWIDTH 0.1 ;
  MAXWIDTH 0.8 ;
  SPACING 0.1 ;
  RESISTANCE 2.0 ;
  CAPACITANCE 0.18 ;
END M4
LAYER V45
  TYPE CUT ;
  SPACING 0.06 ;
END V45
LAYER M5
  TYPE ROUTING ;
  DIRECTION HORIZONTAL ;
  PITCH 0.2 ;
  WIDTH 0.1 ;
  MINWIDTH 0.1 ;
  MAXWIDTH 0.8 ;
  SPACING 0.1 ;
  RESISTANCE 2.0 ;
  CAPACITANCE 0.18 ;
END M5
LAYER V56
  TYPE CUT ;
  SPACING 0.06 ;
END V56
LAYER M6
  TYPE ROUTING ;
  DIRECTION VERTICAL ;
  PITCH 0.2 ;
  WIDTH 0.1 ;
  MINWIDTH 0.1 ;
  MAXWIDTH 0.8 ;
  SPACING 0.1 ;
  RESISTANCE 1.5 ;
  CAPACITANCE 0.17 ;
END M6
VIA V12_1 DEFAULT
  LAYER M1 ;
    RECT -0.05 -0.05 0.05 0.05 ;
  LAYER V12 ;
    RECT -0.03 -0.03 0.03 0.03 ;
  LAYER M2 ;
    RECT -0.05 -0.05 0.05 0.05 ;
END V12_1
VIA V12_2x1
  LAYER M1 ;
    RECT -0.05 -0.11 0.05 0.11 ;
  LAYER V12 ;
    RECT -0.03 -0.09 0.03 -0.03 ;
    RECT -0.03 0.03 0.03 0.09 ;
  LAYER M2 ;
    RECT -0.05 -0.11 0.05 0.11 ;
END V12_2x1
VIA V12_1x2
  LAYER M1 ;
    RECT -0.11 -0.05 0.11 0.05 ;
  LAYER V12 ;
    RECT -0.09 -0.03 -0.03 0.03 ;
    RECT 0.03 -0.03 0.09 0.03 ;
  LAYER M2 ;
    RECT -0.11 -0.05 0.11 0.05 ;
END V12_1x2
VIA V12_2x2
  LAYER M1 ;
    RECT -0.11 -0.11 0.11 0.11 ;
  LAYER V12 ;
    RECT -0.09 -0.09 -0.03 -0.03 ;
    RECT -0.09 0.03 -0.03 0.09 ;
    RECT 0.03 -0.09 0.09 -0.03 ;
    RECT 0.03 0.03 0.09 0.09 ;
  LAYER M2 ;
    RECT -0.11 -0.11 0.11 0.11 ;
END V12_2x2
VIA V23_1 DEFAULT
  LAYER M2 ;
    RECT -0.05 -0.05 0.05 0.05 ;
  LAYER V23 ;
    RECT -0.03 -0.03 0.03 0.03 ;
  LAYER M3 ;
    RECT -0.05 -0.05 0.05 0.05 ;
END V23_1
VIA V34_1 DEFAULT
  LAYER M3 ;
    RECT -0.05 -0.05 0.05 0.05 ;
  LAYER V34 ;
    RECT -0.03 -0.03 0.03 0.03 ;
  LAYER M4 ;
    RECT -0.05 -0.05 0.05 0.05 ;
END V34_1
VIA V45_1 DEFAULT
  LAYER M4 ;
    RECT -0.05 -0.05 0.05 0.05 ;
  LAYER V45 ;
    RECT -0.03 -0.03 0.03 0.03 ;
  LAYER M5 ;
    RECT -0.05 -0.05 0.05 0.05 ;
END V45_1
VIA V56_1 DEFAULT
  LAYER M5 ;
    RECT -0.05 -0.05 0.05 0.05 ;
  LAYER V56 ;
    RECT -0.03 -0.03 0.03 0.03 ;
  LAYER M6 ;
    RECT -0.05 -0.05 0.05 0.05 ;
END V56_1
MACRO INV_X1
  CLASS CORE ;
  SIZE 0.4 BY 1.4 ;
  SITE core ;
  PROPERTY LEAKAGE 0.40 ;
  PROPERTY INPUT_CAP 1.4 ;
  PROPERTY DELAY 25 ;
  PROPERTY SLOPE 2.0 ;
  PIN A
    DIRECTION INPUT ;
    PORT
      LAYER M1 ;
        RECT 0.05 0.55 0.15 0.85 ;
    END
  END A
  PIN Y
    DIRECTION OUTPUT ;
    PORT
      LAYER M1 ;
        RECT 0.25 0.55 0.35 0.85 ;
    END
  END Y
END INV_X1
MACRO INV_X2
  CLASS CORE ;
  SIZE 0.4 BY 1.4 ;
  SITE core ;
  PROPERTY LEAKAGE 0.70 ;
  PROPERTY INPUT_CAP 2.2 ;
  PROPERTY DELAY 18 ;
  PROPERTY SLOPE 1.2 ;
  PIN A
    DIRECTION INPUT ;
    PORT
      LAYER M1 ;
        RECT 0.05 0.55 0.15 0.85 ;
    END
  END A
  PIN Y
    DIRECTION OUTPUT ;
    PORT
      LAYER M1 ;
        RECT 0.25 0.55 0.35 0.85 ;
    END
  END Y
END INV_X2
MACRO BUF_X1
  CLASS BUFFER ;
  SIZE 0.4 BY 1.4 ;
  SITE core ;
  PROPERTY LEAKAGE 0.50 ;
  PROPERTY INPUT_CAP 1.6 ;
  PROPERTY DELAY 35 ;
  PROPERTY SLOPE 1.8 ;
  PIN A
    DIRECTION INPUT ;
    PORT
      LAYER M1 ;
        RECT 0.05 0.55 0.15 0.85 ;
    END
  END A
  PIN Y
    DIRECTION OUTPUT ;
    PORT
      LAYER M1 ;
        RECT 0.25 0.55 0.35 0.85 ;
    END
  END Y
END BUF_X1
MACRO BUF_X2
  CLASS BUFFER ;
  SIZE 0.6 BY 1.4 ;
  SITE core ;
  PROPERTY LEAKAGE 0.90 ;
  PROPERTY INPUT_CAP 2.4 ;
  PROPERTY DELAY 28 ;
  PROPERTY SLOPE 1.1 ;
  PIN A
    DIRECTION INPUT ;
    PORT
      LAYER M1 ;
        RECT 0.05 0.55 0.15 0.85 ;
    END
  END A
  PIN Y
    DIRECTION OUTPUT ;
    PORT
      LAYER M1 ;
        RECT 0.45 0.55 0.55 0.85 ;
    END
  END Y
END BUF_X2
MACRO NAND2_X1
  CLASS CORE ;
  SIZE 0.6 BY 1.4 ;
  SITE core ;
  PROPERTY LEAKAGE 0.60 ;
  PROPERTY INPUT_CAP 1.5 ;
  PROPERTY DELAY 30 ;
  PROPERTY SLOPE 2.2 ;
  PIN A
    DIRECTION INPUT ;
    PORT
      LAYER M1 ;
        RECT 0.05 0.55 0.15 0.85 ;
    END
  END A
  PIN B
    DIRECTION INPUT ;
    PORT
      LAYER M1 ;
        RECT 0.25 0.55 0.35 0.85 ;
    END
  END B
  PIN Y
    DIRECTION OUTPUT ;
    PORT
      LAYER M1 ;
        RECT 0.45 0.55 0.55 0.85 ;
    END
  END Y
END NAND2_X1
MACRO NOR2_X1
  CLASS CORE ;
  SIZE 0.6 BY 1.4 ;
  SITE core ;
  PROPERTY LEAKAGE 0.60 ;
  PROPERTY INPUT_CAP 1.5 ;
  PROPERTY DELAY 32 ;
  PROPERTY SLOPE 2.4 ;
  PIN A
    DIRECTION INPUT ;
    PORT
      LAYER M1 ;
        RECT 0.05 0.55 0.15 0.85 ;
    END
  END A
  PIN B
    DIRECTION INPUT ;
    PORT
      LAYER M1 ;
        RECT 0.25 0.55 0.35 0.85 ;
    END
  END B
  PIN Y
    DIRECTION OUTPUT ;
    PORT
      LAYER M1 ;
        RECT 0.45 0.55 0.55 0.85 ;
    END
  END Y
END NOR2_X1
MACRO DFF_X1
  CLASS CORE ;
  SIZE 1.0 BY 1.4 ;
  SITE core ;
  PROPERTY LEAKAGE 1.20 ;
  PROPERTY INPUT_CAP 1.8 ;
  PROPERTY DELAY 80 ;
  PROPERTY SLOPE 1.5 ;
  PIN D
    DIRECTION INPUT ;
    PORT
      LAYER M1 ;
        RECT 0.05 0.55 0.15 0.85 ;
    END
  END D
  PIN CK
    DIRECTION INPUT ;
    USE CLOCK ;
    PORT
      LAYER M1 ;
        RECT 0.45 0.55 0.55 0.85 ;
    END
  END CK
  PIN Q
    DIRECTION OUTPUT ;
    PORT
      LAYER M1 ;
        RECT 0.85 0.55 0.95 0.85 ;
    END
  END Q
END DFF_X1
MACRO FILL_X1
  CLASS FILLER ;
  SIZE 0.2 BY 1.4 ;
  SITE core ;
  PROPERTY LEAKAGE 0.05 ;
  PROPERTY INPUT_CAP 0 ;
  PROPERTY DELAY 0 ;
  PROPERTY SLOPE 0 ;
END FILL_X1
MACRO FILL_X2
  CLASS FILLER ;
  SIZE 0.4 BY 1.4 ;
  SITE core ;
  PROPERTY LEAKAGE 0.08 ;
  PROPERTY INPUT_CAP 0 ;
  PROPERTY DELAY 0 ;
  PROPERTY SLOPE 0 ;
END FILL_X2
MACRO FILL_X4
  CLASS FILLER ;
  SIZE 0.8 BY 1.4 ;
  SITE core ;
  PROPERTY LEAKAGE 0.12 ;
  PROPERTY INPUT_CAP 0 ;
  PROPERTY DELAY 0 ;
  PROPERTY SLOPE 0 ;
END FILL_X4
END LIBRARY
)";
  return text;
}

}  // namespace salsy
