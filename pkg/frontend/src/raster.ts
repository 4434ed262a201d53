/**
 * RGBA raster with the drawing primitives the figures need: filled
 * rectangles, solid/dashed lines, bitmap text, and nice axis ticks.
 */
import { GLYPH_HEIGHT, GLYPH_SPACING, GLYPH_WIDTH, glyph, textWidth } from "./font";

export type Color = [number, number, number];

export const BLACK: Color = [0, 0, 0];
export const WHITE: Color = [255, 255, 255];
export const GREY: Color = [170, 170, 170];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Color = WHITE) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.data[4 * i] = background[0];
      this.data[4 * i + 1] = background[1];
      this.data[4 * i + 2] = background[2];
      this.data[4 * i + 3] = 255;
    }
  }

  set(x: number, y: number, color: Color): void {
    x = Math.round(x);
    y = Math.round(y);
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = 4 * (y * this.width + x);
    this.data[i] = color[0];
    this.data[i + 1] = color[1];
    this.data[i + 2] = color[2];
    this.data[i + 3] = 255;
  }

  get(x: number, y: number): Color {
    const i = 4 * (y * this.width + x);
    return [this.data[i], this.data[i + 1], this.data[i + 2]];
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Color): void {
    const xEnd = Math.min(this.width, Math.round(x0 + w));
    const yEnd = Math.min(this.height, Math.round(y0 + h));
    for (let y = Math.max(0, Math.round(y0)); y < yEnd; y++) {
      for (let x = Math.max(0, Math.round(x0)); x < xEnd; x++) {
        this.set(x, y, color);
      }
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, color: Color, dash?: [number, number]): void {
    // Bresenham with an optional on/off dash pattern counted in steps
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xe = Math.round(x1);
    const ye = Math.round(y1);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    let step = 0;
    for (;;) {
      const on = !dash || step % (dash[0] + dash[1]) < dash[0];
      if (on) this.set(x, y, color);
      if (x === xe && y === ye) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
      step += 1;
    }
  }

  text(x: number, y: number, content: string, color: Color = BLACK, scale = 1): void {
    let cursor = Math.round(x);
    for (const char of content) {
      const rows = glyph(char);
      for (let r = 0; r < GLYPH_HEIGHT; r++) {
        for (let c = 0; c < GLYPH_WIDTH; c++) {
          if (rows[r][c] === "X") {
            this.fillRect(cursor + c * scale, Math.round(y) + r * scale, scale, scale, color);
          }
        }
      }
      cursor += (GLYPH_WIDTH + GLYPH_SPACING) * scale;
    }
  }

  textCentered(cx: number, y: number, content: string, color: Color = BLACK, scale = 1): void {
    this.text(cx - textWidth(content, scale) / 2, y, content, color, scale);
  }
}

/** ~n round tick values covering [lo, hi] */
export function niceTicks(lo: number, hi: number, n = 5): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const rawStep = span / Math.max(1, n - 1);
  const magnitude = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = magnitude;
  for (const multiple of [1, 2, 2.5, 5, 10]) {
    if (magnitude * multiple >= rawStep) {
      step = magnitude * multiple;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

export function formatTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 0.01 && magnitude < 10000) {
    return parseFloat(value.toPrecision(4)).toString();
  }
  const exponent = Math.floor(Math.log10(magnitude));
  const mantissa = value / Math.pow(10, exponent);
  const mantissaText = parseFloat(mantissa.toPrecision(3)).toString();
  return `${mantissaText}e${exponent}`;
}
