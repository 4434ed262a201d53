/** Shared plot frame: margins, axis box, ticks and labels. */
import { BLACK, Color, formatTick, niceTicks, Raster } from "./raster";
import { textWidth } from "./font";

export interface FrameOptions {
  width: number;
  height: number;
  xLabel: string;
  yLabel: string;
  title?: string;
  xTicks?: number[];
  yTicks?: number[];
  xTickText?: (v: number) => string;
  yTickText?: (v: number) => string;
}

export class Frame {
  readonly raster: Raster;
  readonly left = 64;
  readonly right: number;
  readonly top = 24;
  readonly bottom: number;
  readonly x0: number;
  readonly x1: number;
  readonly y0: number;
  readonly y1: number;

  constructor(x0: number, x1: number, y0: number, y1: number, options: FrameOptions,
              rightMargin = 16) {
    this.raster = new Raster(options.width, options.height);
    this.right = options.width - rightMargin;
    this.bottom = options.height - 36;
    this.x0 = x0;
    this.x1 = x1;
    this.y0 = y0;
    this.y1 = y1;
    this.drawAxes(options);
  }

  px(x: number): number {
    return this.left + ((x - this.x0) / (this.x1 - this.x0)) * (this.right - this.left);
  }

  py(y: number): number {
    return this.bottom - ((y - this.y0) / (this.y1 - this.y0)) * (this.bottom - this.top);
  }

  private drawAxes(options: FrameOptions): void {
    const r = this.raster;
    r.line(this.left, this.top, this.left, this.bottom, BLACK);
    r.line(this.left, this.bottom, this.right, this.bottom, BLACK);
    r.line(this.right, this.top, this.right, this.bottom, BLACK);
    r.line(this.left, this.top, this.right, this.top, BLACK);

    const xTicks = options.xTicks ?? niceTicks(this.x0, this.x1);
    const xText = options.xTickText ?? formatTick;
    for (const tick of xTicks) {
      if (tick < this.x0 - 1e-12 || tick > this.x1 + 1e-12) continue;
      const x = this.px(tick);
      r.line(x, this.bottom, x, this.bottom + 4, BLACK);
      r.textCentered(x, this.bottom + 7, xText(tick));
    }
    const yTicks = options.yTicks ?? niceTicks(this.y0, this.y1);
    const yText = options.yTickText ?? formatTick;
    for (const tick of yTicks) {
      if (tick < this.y0 - 1e-12 || tick > this.y1 + 1e-12) continue;
      const y = this.py(tick);
      r.line(this.left - 4, y, this.left, y, BLACK);
      const label = yText(tick);
      r.text(this.left - 8 - textWidth(label), y - 3, label);
    }
    r.textCentered((this.left + this.right) / 2, this.raster.height - 12, options.xLabel);
    r.text(6, this.top - 14, options.yLabel);
    if (options.title) {
      r.textCentered((this.left + this.right) / 2, 6, options.title);
    }
  }
}
