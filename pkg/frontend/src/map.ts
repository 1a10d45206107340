// SVG map: my marker, other players, dropped items, and click-to-move.
// The projection is plain equirectangular around the viewport center;
// it is presentation math only (all distances shown come from the server).

import type { GeoPointDto } from "./types.js";
import type { ClientViewState } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const VIEW = 600; // viewBox is VIEW x VIEW units

export const METERS_PER_DEGREE_LAT = 111_320;

export function metersPerDegreeLon(lat: number): number {
  return METERS_PER_DEGREE_LAT * Math.cos((lat * Math.PI) / 180);
}

export class MapView {
  readonly svg: SVGSVGElement;
  center: GeoPointDto = { lat: 0, lon: 0 };
  spanM = 1000; // meters across the viewport
  private onMove: ((p: GeoPointDto) => void) | null = null;

  constructor(private readonly doc: Document) {
    this.svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
    this.svg.setAttribute("viewBox", `0 0 ${VIEW} ${VIEW}`);
    this.svg.setAttribute("class", "map");
    this.svg.addEventListener("click", (raw) => {
      const event = raw as MouseEvent;
      if (!this.onMove) return;
      const point = this.clickToPoint(event);
      if (point) this.onMove(point);
    });
  }

  configure(center: GeoPointDto | null, spanM: number): void {
    if (center) this.center = center;
    if (spanM > 0) this.spanM = spanM;
  }

  clickHandler(handler: (p: GeoPointDto) => void): void {
    this.onMove = handler;
  }

  zoom(factor: number): void {
    this.spanM = Math.min(Math.max(this.spanM * factor, 20), 5_000_000);
  }

  project(p: GeoPointDto): { x: number; y: number } {
    const unitsPerMeter = VIEW / this.spanM;
    const dxM = (p.lon - this.center.lon) * metersPerDegreeLon(this.center.lat);
    const dyM = (p.lat - this.center.lat) * METERS_PER_DEGREE_LAT;
    return { x: VIEW / 2 + dxM * unitsPerMeter, y: VIEW / 2 - dyM * unitsPerMeter };
  }

  unproject(x: number, y: number): GeoPointDto {
    const metersPerUnit = this.spanM / VIEW;
    const dxM = (x - VIEW / 2) * metersPerUnit;
    const dyM = (VIEW / 2 - y) * metersPerUnit;
    return {
      lat: this.center.lat + dyM / METERS_PER_DEGREE_LAT,
      lon: this.center.lon + dxM / metersPerDegreeLon(this.center.lat),
    };
  }

  private clickToPoint(event: MouseEvent): GeoPointDto | null {
    // jsdom has no layout, so getBoundingClientRect may be all zeros;
    // tests dispatch clicks with offsetX/offsetY-style coordinates instead.
    const rect = this.svg.getBoundingClientRect();
    const width = rect.width || VIEW;
    const height = rect.height || VIEW;
    const x = ((event.clientX - rect.left) / width) * VIEW;
    const y = ((event.clientY - rect.top) / height) * VIEW;
    if (!Number.isFinite(x) || !Number.isFinite(y)) return null;
    return this.unproject(x, y);
  }

  render(state: ClientViewState): void {
    this.svg.replaceChildren();
    this.renderGrid();
    for (const marker of state.dropMarkers.values()) {
      this.dot(
        { lat: marker.lat, lon: marker.lon },
        8,
        "drop",
        `${marker.itemId} x${marker.qty} (dropped by ${marker.byPlayer})`,
        marker.locationId,
      );
    }
    for (const other of state.others) {
      this.dot({ lat: other.lat, lon: other.lon }, 9, "other", other.player_id, other.player_id);
    }
    if (state.myPosition) {
      this.dot(state.myPosition, 10, "me", state.playerId ?? "me", "me");
    }
  }

  private renderGrid(): void {
    for (let i = 1; i < 6; i++) {
      const at = (VIEW / 6) * i;
      for (const [x1, y1, x2, y2] of [
        [at, 0, at, VIEW],
        [0, at, VIEW, at],
      ]) {
        const line = this.doc.createElementNS(SVG_NS, "line");
        line.setAttribute("x1", String(x1));
        line.setAttribute("y1", String(y1));
        line.setAttribute("x2", String(x2));
        line.setAttribute("y2", String(y2));
        line.setAttribute("class", "grid");
        this.svg.append(line);
      }
    }
  }

  private dot(p: GeoPointDto, r: number, kind: string, label: string, id: string): void {
    const { x, y } = this.project(p);
    const group = this.doc.createElementNS(SVG_NS, "g");
    group.setAttribute("class", `marker marker-${kind}`);
    group.setAttribute("data-marker", kind);
    group.setAttribute("data-id", id);
    const circle = this.doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(x));
    circle.setAttribute("cy", String(y));
    circle.setAttribute("r", String(r));
    const title = this.doc.createElementNS(SVG_NS, "title");
    title.textContent = label;
    circle.append(title);
    group.append(circle);
    const text = this.doc.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(x + r + 2));
    text.setAttribute("y", String(y + 4));
    text.textContent = label;
    group.append(text);
    this.svg.append(group);
  }
}
